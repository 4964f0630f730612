//! Finite groups as validated multiplication tables: standard families,
//! direct products, minimum generating-set size, and exhaustive
//! homomorphism search between small groups.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps;
use crate::util::any_combination;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table must be a nonempty square with entries < order")]
    BadTable,
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unknown group name `{0}` (expected C<n>, D<n>, S<n≤4>, or x-products)")]
    UnknownName(String),
    #[error("symmetric groups are only tabulated up to S4, got S{0}")]
    SymmetricTooLarge(u32),
    #[error("exact minimum rank is only searched for order ≤ {cap}, group has order {order}")]
    TooLargeForExactRank { order: usize, cap: usize },
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    n: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Wire form: just the order and the table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl Group {
    /// Validates the table: squareness, an identity, inverses, and full
    /// associativity (cubic in the order; meant for desk-scale groups).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&e| e >= n))
        {
            return Err(GroupError::BadTable);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(GroupError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(Group {
            n,
            table,
            identity,
            inverse,
        })
    }

    pub fn from_json(json: &GroupJson) -> Result<Group, GroupError> {
        if json.table.len() != json.order {
            return Err(GroupError::BadTable);
        }
        Group::from_table(json.table.clone())
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.n,
            table: self.table.clone(),
        }
    }

    pub fn trivial() -> Group {
        Group::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Group {
        assert!(n > 0);
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Group::from_table(table).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`: element `i + n·j` is rotationⁱ·flipʲ.
    pub fn dihedral(n: usize) -> Group {
        assert!(n > 0);
        let idx = |rot: usize, flip: usize| rot % n + n * (flip % 2);
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for a in 0..n {
            for e in 0..2 {
                for b in 0..n {
                    for f in 0..2 {
                        // (rᵃsᵉ)(rᵇs^f) = r^(a±b) s^(e+f), sign by e.
                        let rot = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                        table[idx(a, e)][idx(b, f)] = idx(rot, e + f);
                    }
                }
            }
        }
        Group::from_table(table).expect("dihedral table is a group")
    }

    /// Symmetric group on `n ≤ 4` points; elements are permutations in
    /// lexicographic order, `(p·q)(i) = p(q(i))`.
    pub fn symmetric(n: u32) -> Result<Group, GroupError> {
        if n == 0 || n > 4 {
            return Err(GroupError::SymmetricTooLarge(n));
        }
        let n = n as usize;
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..n).filter_map(move |v| {
                        if p.contains(&v) {
                            None
                        } else {
                            let mut q = p.clone();
                            q.push(v);
                            Some(q)
                        }
                    })
                })
                .collect();
        }
        perms.sort();
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&(0..n).map(|i| p[q[i]]).collect()))
                    .collect()
            })
            .collect();
        Ok(Group::from_table(table).expect("symmetric table is a group"))
    }

    /// Direct product; element `(x, y)` is `x·|H| + y`.
    pub fn direct_product(&self, h: &Group) -> Group {
        let n = self.n * h.n;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (x1, y1) = (a / h.n, a % h.n);
                        let (x2, y2) = (b / h.n, b % h.n);
                        self.table[x1][x2] * h.n + h.table[y1][y2]
                    })
                    .collect()
            })
            .collect();
        Group::from_table(table).expect("product table is a group")
    }

    /// Parses names like `C6`, `D4`, `S3`, and x-products `C2xC2xS3`.
    pub fn parse_named(name: &str) -> Result<Group, GroupError> {
        let mut result: Option<Group> = None;
        for part in name.split('x') {
            let part = part.trim();
            let err = || GroupError::UnknownName(name.to_string());
            let (kind, num) = part.split_at(1.min(part.len()));
            let k: u32 = num.parse().map_err(|_| err())?;
            let g = match kind {
                "C" if k >= 1 => Group::cyclic(k as usize),
                "D" if k >= 1 => Group::dihedral(k as usize),
                "S" => Group::symmetric(k)?,
                _ => return Err(err()),
            };
            result = Some(match result {
                None => g,
                Some(r) => r.direct_product(&g),
            });
        }
        result.ok_or_else(|| GroupError::UnknownName(name.to_string()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.table[x][y] == self.table[y][x]))
    }

    /// The subgroup generated by `seed` (all products of seed elements;
    /// inverses come for free in a finite group).
    pub fn closure(&self, seed: &[usize]) -> BTreeSet<usize> {
        if seed.is_empty() {
            return BTreeSet::from([self.identity]);
        }
        let mut set: BTreeSet<usize> = seed.iter().copied().collect();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in seed {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn generates(&self, seed: &[usize]) -> bool {
        self.closure(seed).len() == self.n
    }

    /// Size of a smallest generating set, by exhaustive subset search in
    /// size order. Refuses orders beyond the configured cap rather than
    /// running an open-ended search; the closure-based `generates` check
    /// stays available for candidate sets of any size.
    pub fn min_rank(&self) -> Result<usize, GroupError> {
        let cap = caps::DEFAULT_GROUP_RANK_CAP;
        if self.n > cap {
            return Err(GroupError::TooLargeForExactRank { order: self.n, cap });
        }
        if self.n == 1 {
            return Ok(0);
        }
        let pool: Vec<usize> = (0..self.n).filter(|&x| x != self.identity).collect();
        for k in 1..=pool.len() {
            let found = any_combination(pool.len(), k, |picked| {
                let seed: Vec<usize> = picked.iter().map(|&i| pool[i]).collect();
                self.generates(&seed)
            });
            if found {
                return Ok(k);
            }
        }
        unreachable!("the full element set always generates");
    }

    /// Minimum size of a generating set of the subgroup given by `members`
    /// (which must be closed), by the same exhaustive search as
    /// [`Group::min_rank`].
    pub fn subset_rank(&self, members: &BTreeSet<usize>) -> Result<usize, GroupError> {
        let cap = caps::DEFAULT_GROUP_RANK_CAP;
        if members.len() > cap {
            return Err(GroupError::TooLargeForExactRank {
                order: members.len(),
                cap,
            });
        }
        let pool: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&x| x != self.identity)
            .collect();
        if pool.is_empty() {
            return Ok(0);
        }
        for k in 1..=pool.len() {
            let found = any_combination(pool.len(), k, |picked| {
                let seed: Vec<usize> = picked.iter().map(|&i| pool[i]).collect();
                self.closure(&seed).len() == members.len()
            });
            if found {
                return Ok(k);
            }
        }
        unreachable!("the full member set generates itself");
    }

    /// A short generating sequence: greedily add the smallest element not
    /// yet in the closure. Each step at least doubles the subgroup, so the
    /// sequence has length ≤ log₂(order).
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut reach = self.closure(&gens);
        while reach.len() < self.n {
            let next = (0..self.n).find(|x| !reach.contains(x)).unwrap();
            gens.push(next);
            reach = self.closure(&gens);
        }
        gens
    }

    /// Is `map` (element-indexed) a homomorphism into `h`?
    pub fn is_homomorphism(&self, h: &Group, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&y| y < h.n)
            && (0..self.n)
                .all(|x| (0..self.n).all(|y| map[self.mul(x, y)] == h.mul(map[x], map[y])))
    }

    /// Every homomorphism into `h`, as element-indexed image maps, in
    /// lexicographic order of the map. Search space: image tuples for a
    /// short generating sequence, pruned by element orders, each candidate
    /// extended along products and then validated in full.
    pub fn all_homomorphisms(&self, h: &Group) -> Vec<Vec<usize>> {
        let gens = self.generating_sequence();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..h.n)
                    .filter(|&y| o.is_multiple_of(h.element_order(y)))
                    .collect()
            })
            .collect();
        // Breadth-first product expressions: each element as parent·gen.
        let mut expr: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut order = vec![self.identity];
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    expr[y] = Some((x, gi));
                    order.push(y);
                }
            }
        }
        let mut homs = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        'outer: loop {
            let images: Vec<usize> = choice
                .iter()
                .zip(&candidates)
                .map(|(&c, cand)| cand[c])
                .collect();
            let mut map = vec![usize::MAX; self.n];
            map[self.identity] = h.identity;
            for &x in order.iter().skip(1) {
                let (parent, gi) = expr[x].unwrap();
                map[x] = h.mul(map[parent], images[gi]);
            }
            if self.is_homomorphism(h, &map) {
                homs.push(map);
            }
            // Next tuple, odometer-style.
            for i in (0..choice.len()).rev() {
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
        homs.sort();
        homs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation_rejects_broken_tables() {
        assert_eq!(Group::from_table(vec![]).unwrap_err(), GroupError::BadTable);
        assert_eq!(
            Group::from_table(vec![vec![0, 1], vec![1]]).unwrap_err(),
            GroupError::BadTable
        );
        // Left-zero semigroup: no identity.
        assert_eq!(
            Group::from_table(vec![vec![0, 0], vec![1, 1]]).unwrap_err(),
            GroupError::NoIdentity
        );
        // Identity but a non-associative (and non-invertible) row pattern.
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(matches!(
            Group::from_table(t),
            Err(GroupError::NoInverse(_) | GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn standard_families_have_expected_shapes() {
        assert_eq!(Group::cyclic(6).order(), 6);
        assert!(Group::cyclic(6).is_abelian());
        assert_eq!(Group::dihedral(4).order(), 8);
        assert!(!Group::dihedral(3).is_abelian());
        assert_eq!(Group::symmetric(4).unwrap().order(), 24);
        assert_eq!(Group::symmetric(3).unwrap().order(), 6);
        assert!(Group::symmetric(5).is_err());
        let k4 = Group::cyclic(2).direct_product(&Group::cyclic(2));
        assert_eq!(k4.order(), 4);
        assert!(k4.is_abelian());
        assert_eq!((0..4).filter(|&x| k4.element_order(x) == 2).count(), 3);
    }

    #[test]
    fn dihedral_3_is_symmetric_3() {
        // Same order, both nonabelian with 3 elements of order 2.
        let d3 = Group::dihedral(3);
        let s3 = Group::symmetric(3).unwrap();
        let spectrum = |g: &Group| {
            let mut s: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
            s.sort();
            s
        };
        assert_eq!(spectrum(&d3), spectrum(&s3));
    }

    #[test]
    fn named_parser_round_trips() {
        assert_eq!(Group::parse_named("C6").unwrap().order(), 6);
        assert_eq!(Group::parse_named("S3").unwrap().order(), 6);
        assert_eq!(Group::parse_named("C2xC2").unwrap().order(), 4);
        assert_eq!(Group::parse_named("C2xC3").unwrap().order(), 6);
        assert_eq!(Group::parse_named("D4xC2").unwrap().order(), 16);
        assert!(Group::parse_named("Q8").is_err());
        assert!(Group::parse_named("").is_err());
        assert!(Group::parse_named("Cx").is_err());
    }

    #[test]
    fn min_rank_of_known_groups() {
        assert_eq!(Group::trivial().min_rank().unwrap(), 0);
        assert_eq!(Group::cyclic(6).min_rank().unwrap(), 1);
        assert_eq!(Group::parse_named("C2xC2").unwrap().min_rank().unwrap(), 2);
        assert_eq!(Group::symmetric(3).unwrap().min_rank().unwrap(), 2);
        assert_eq!(Group::symmetric(4).unwrap().min_rank().unwrap(), 2);
        assert_eq!(
            Group::parse_named("C2xC2xC2").unwrap().min_rank().unwrap(),
            3
        );
        // C2 × C3 ≅ C6 is still cyclic.
        assert_eq!(Group::parse_named("C2xC3").unwrap().min_rank().unwrap(), 1);
    }

    #[test]
    fn subset_rank_on_proper_subgroups() {
        let s3 = Group::symmetric(3).unwrap();
        for x in 0..6 {
            let members = s3.closure(&[x]);
            let expected = usize::from(x != s3.identity());
            assert_eq!(s3.subset_rank(&members).unwrap(), expected);
        }
        let whole: BTreeSet<usize> = (0..6).collect();
        assert_eq!(s3.subset_rank(&whole).unwrap(), 2);
    }

    #[test]
    fn min_rank_refuses_large_groups() {
        let g = Group::cyclic(30);
        assert_eq!(
            g.min_rank().unwrap_err(),
            GroupError::TooLargeForExactRank { order: 30, cap: 24 }
        );
    }

    #[test]
    fn closure_finds_subgroups() {
        let s3 = Group::symmetric(3).unwrap();
        let sizes: BTreeSet<usize> = (0..6).map(|x| s3.closure(&[x]).len()).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2, 3]));
        assert!(s3.generates(&s3.generating_sequence()));
    }

    #[test]
    fn homomorphism_counts_match_classical_values() {
        let c6 = Group::cyclic(6);
        let s3 = Group::symmetric(3).unwrap();
        let c2 = Group::cyclic(2);
        let k4 = Group::parse_named("C2xC2").unwrap();
        assert_eq!(c6.all_homomorphisms(&s3).len(), 6);
        assert_eq!(s3.all_homomorphisms(&c6).len(), 2);
        assert_eq!(k4.all_homomorphisms(&c2).len(), 4);
        assert_eq!(s3.all_homomorphisms(&s3).len(), 10);
        assert_eq!(Group::cyclic(4).all_homomorphisms(&c2).len(), 2);
        assert_eq!(Group::trivial().all_homomorphisms(&s3).len(), 1);
        assert_eq!(s3.all_homomorphisms(&Group::trivial()).len(), 1);
    }

    #[test]
    fn homomorphisms_validate_and_dedup() {
        let c4 = Group::cyclic(4);
        let c2 = Group::cyclic(2);
        let homs = c4.all_homomorphisms(&c2);
        for m in &homs {
            assert!(c4.is_homomorphism(&c2, m));
        }
        let distinct: BTreeSet<&Vec<usize>> = homs.iter().collect();
        assert_eq!(distinct.len(), homs.len());
    }

    #[test]
    fn json_round_trip() {
        let g = Group::dihedral(3);
        let j = g.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: GroupJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Group::from_json(&back).unwrap(), g);
    }
}
