//! Union-find with path halving. Used by the folding loop and by the
//! word-problem oracle.

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn root(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Makes `loser`'s root point at `winner`'s root. The caller picks the
    /// orientation (folding merges the smaller adjacency map into the larger).
    pub fn union_into(&mut self, loser: usize, winner: usize) {
        let l = self.root(loser);
        let w = self.root(winner);
        if l != w {
            self.parent[l] = w;
        }
    }

    #[cfg(test)]
    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.root(a) == self.root(b)
    }

    /// Number of distinct classes.
    #[cfg(test)]
    pub fn class_count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&v| self.root(v) == v)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_find() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.class_count(), 5);
        uf.union_into(0, 1);
        uf.union_into(2, 3);
        assert!(uf.same(0, 1));
        assert!(!uf.same(1, 2));
        uf.union_into(1, 3);
        assert!(uf.same(0, 2));
        assert_eq!(uf.class_count(), 2);
    }

    #[test]
    fn union_orientation() {
        let mut uf = UnionFind::new(3);
        uf.union_into(0, 2);
        assert_eq!(uf.root(0), 2);
        uf.union_into(2, 2);
        assert_eq!(uf.root(0), 2);
    }
}
