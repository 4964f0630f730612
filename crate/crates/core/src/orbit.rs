//! Endomorphisms of finite semigroups presented as index maps: validation,
//! extension from generator images, and the preperiod/period structure of
//! the induced functional graph on elements.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::lcm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EndoError {
    #[error("map has {0} entries but the semigroup has {1} elements")]
    WrongLength(usize, usize),
    #[error("map entry {0} out of range (semigroup has {1} elements)")]
    EntryOutOfRange(usize, usize),
    #[error("not a homomorphism: elements {x} and {y} witness (xy)φ ≠ xφ·yφ")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("generator {0} listed twice with different images")]
    ConflictingImages(usize),
    #[error("generators only reach {reached} of {total} elements")]
    NotGenerating { reached: usize, total: usize },
}

/// Checks that `map` is a length-`n` self-map compatible with `mul`.
pub fn validate_endo(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    map: &[usize],
) -> Result<(), EndoError> {
    if map.len() != n {
        return Err(EndoError::WrongLength(map.len(), n));
    }
    if let Some(&e) = map.iter().find(|&&e| e >= n) {
        return Err(EndoError::EntryOutOfRange(e, n));
    }
    for x in 0..n {
        for y in 0..n {
            if map[mul(x, y)] != mul(map[x], map[y]) {
                return Err(EndoError::NotAHomomorphism { x, y });
            }
        }
    }
    Ok(())
}

/// Extends images of a generating set to the whole semigroup along products.
/// The result is only guaranteed to be a homomorphism after a separate
/// [`validate_endo`] pass; any total map that passes validation and agrees
/// on the generators is *the* extension, so no consistency is lost by
/// resolving products greedily here.
pub fn extend_generator_images(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    images: &[(usize, usize)],
) -> Result<Vec<usize>, EndoError> {
    let mut map: Vec<Option<usize>> = vec![None; n];
    for &(g, img) in images {
        if g >= n {
            return Err(EndoError::EntryOutOfRange(g, n));
        }
        if img >= n {
            return Err(EndoError::EntryOutOfRange(img, n));
        }
        match map[g] {
            Some(prev) if prev != img => return Err(EndoError::ConflictingImages(g)),
            _ => map[g] = Some(img),
        }
    }
    let gens: Vec<usize> = images.iter().map(|&(g, _)| g).collect();
    let mut frontier: Vec<usize> = map
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.map(|_| i))
        .collect();
    let mut reached = frontier.len();
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = mul(x, g);
            if map[y].is_none() {
                map[y] = Some(mul(map[x].unwrap(), map[g].unwrap()));
                reached += 1;
                frontier.push(y);
            }
        }
    }
    if reached < n {
        return Err(EndoError::NotGenerating { reached, total: n });
    }
    Ok(map.into_iter().map(Option::unwrap).collect())
}

/// For each element of the functional graph of `map`: the distance to its
/// cycle and the length of that cycle.
pub fn orbit_data(map: &[usize]) -> Vec<(usize, usize)> {
    let n = map.len();
    let mut resolved: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut on_path: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        if resolved[start].is_some() {
            continue;
        }
        let mut path = Vec::new();
        let mut x = start;
        loop {
            if let Some((m, d)) = resolved[x] {
                for (i, &v) in path.iter().enumerate() {
                    resolved[v] = Some((m + path.len() - i, d));
                }
                break;
            }
            if let Some(first) = on_path[x] {
                let d = path.len() - first;
                for &v in &path[first..] {
                    resolved[v] = Some((0, d));
                }
                for (i, &v) in path[..first].iter().enumerate() {
                    resolved[v] = Some((first - i, d));
                }
                break;
            }
            on_path[x] = Some(path.len());
            path.push(x);
            x = map[x];
        }
        for &v in &path {
            on_path[v] = None;
        }
    }
    resolved.into_iter().map(Option::unwrap).collect()
}

pub fn fix_points(map: &[usize]) -> Vec<usize> {
    (0..map.len()).filter(|&x| map[x] == x).collect()
}

/// Elements fixed by the `power`-th iterate: on a cycle, with cycle length
/// dividing `power`.
pub fn fix_of_power(data: &[(usize, usize)], power: u64) -> Vec<usize> {
    data.iter()
        .enumerate()
        .filter(|&(_, &(m, d))| m == 0 && power.is_multiple_of(d as u64))
        .map(|(x, _)| x)
        .collect()
}

pub fn periodic_points(data: &[(usize, usize)]) -> Vec<usize> {
    data.iter()
        .enumerate()
        .filter(|&(_, &(m, _))| m == 0)
        .map(|(x, _)| x)
        .collect()
}

/// Least common multiple of all cycle lengths.
pub fn period_lcm(data: &[(usize, usize)]) -> u64 {
    data.iter()
        .filter(|&&(m, _)| m == 0)
        .map(|&(_, d)| d as u64)
        .fold(1, lcm)
}

/// The least `k ≥ 1` with `Fix(φ^{k!}) = Fix(φ^{(k+1)!}) = …`, i.e. with
/// every cycle length dividing `k!`. Checking that the fixed sets are
/// *stationary* matters: with cycle lengths 2 and 5, `Fix(3!) = Fix(4!)`
/// although neither equals the full periodic set yet.
pub fn power_stabilization(data: &[(usize, usize)]) -> usize {
    // d | k! iff dividing d by gcd(·, i) for i = 1..k reaches 1: each
    // factor of k! is spent at most once, and greedy spending is optimal
    // prime by prime.
    fn divides_factorial(d: u64, k: u64) -> bool {
        let mut rem = d;
        for i in 1..=k {
            rem /= crate::util::gcd(rem, i);
            if rem == 1 {
                return true;
            }
        }
        rem == 1
    }
    let mut k = 1;
    while !data
        .iter()
        .all(|&(m, d)| m != 0 || divides_factorial(d as u64, k as u64))
    {
        k += 1;
    }
    k
}

/// Wire form of an endomorphism: either the full element-indexed map or
/// images of a generating set, to be extended along products.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndoJson {
    Map {
        map: Vec<usize>,
    },
    Images {
        generator_images: Vec<(usize, usize)>,
    },
}

/// Resolves the wire form into a validated total map.
pub fn resolve_endo(
    n: usize,
    mul: impl Fn(usize, usize) -> usize + Copy,
    json: &EndoJson,
) -> Result<Vec<usize>, EndoError> {
    let map = match json {
        EndoJson::Map { map } => map.clone(),
        EndoJson::Images { generator_images } => extend_generator_images(n, mul, generator_images)?,
    };
    validate_endo(n, mul, &map)?;
    Ok(map)
}

/// Per-element orbit summary for reports.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub preperiods: Vec<usize>,
    pub periods: Vec<usize>,
    pub max_preperiod: usize,
    pub period_lcm: u64,
    pub stabilization: usize,
}

impl OrbitReport {
    pub fn of(map: &[usize]) -> OrbitReport {
        let data = orbit_data(map);
        OrbitReport {
            preperiods: data.iter().map(|&(m, _)| m).collect(),
            periods: data.iter().map(|&(_, d)| d).collect(),
            max_preperiod: data.iter().map(|&(m, _)| m).max().unwrap_or(0),
            period_lcm: period_lcm(&data),
            stabilization: power_stabilization(&data),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_data_on_rho_shape() {
        // 0 → 1 → 2 → 3 → 2 (tail of length 2 into a 2-cycle), 4 → 4.
        let map = vec![1, 2, 3, 2, 4];
        assert_eq!(
            orbit_data(&map),
            vec![(2, 2), (1, 2), (0, 2), (0, 2), (0, 1)]
        );
        assert_eq!(fix_points(&map), vec![4]);
        assert_eq!(periodic_points(&orbit_data(&map)), vec![2, 3, 4]);
    }

    #[test]
    fn fix_of_power_respects_cycle_lengths() {
        // Disjoint cycles of lengths 2 and 3 plus a fixed point.
        let map = vec![1, 0, 3, 4, 2, 5];
        let data = orbit_data(&map);
        assert_eq!(fix_of_power(&data, 1), vec![5]);
        assert_eq!(fix_of_power(&data, 2), vec![0, 1, 5]);
        assert_eq!(fix_of_power(&data, 6), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(period_lcm(&data), 6);
    }

    #[test]
    fn stabilization_is_stationary_not_just_repeating() {
        // Cycle lengths 2 and 5: Fix(3!) = Fix(4!) but 5 ∤ 4!, so the
        // stabilization point is 5, not 3.
        let map = vec![1, 0, 3, 4, 5, 6, 2];
        let data = orbit_data(&map);
        assert_eq!(power_stabilization(&data), 5);

        // Cycle lengths 2 and 3 stabilize at 3 (2·3 | 3!).
        let map = vec![1, 0, 3, 4, 2];
        assert_eq!(power_stabilization(&orbit_data(&map)), 3);

        // Identity stabilizes immediately.
        assert_eq!(power_stabilization(&orbit_data(&[0, 1, 2])), 1);

        // A 4-cycle needs k = 4: 4 divides 4! but not 3! — the divisor
        // test must not reuse factors of k!.
        assert_eq!(power_stabilization(&orbit_data(&[1, 2, 3, 0])), 4);

        // An 8-cycle: 8 | 4! (2·4·(3 spare)), so k = 4 again.
        assert_eq!(
            power_stabilization(&orbit_data(&[1, 2, 3, 4, 5, 6, 7, 0])),
            4
        );
    }

    #[test]
    fn validate_endo_catches_non_homomorphisms() {
        // (ℤ/4, +): doubling is an endomorphism, a transposition is not.
        let mul = |x: usize, y: usize| (x + y) % 4;
        assert_eq!(validate_endo(4, mul, &[0, 2, 0, 2]), Ok(()));
        assert!(matches!(
            validate_endo(4, mul, &[1, 0, 2, 3]),
            Err(EndoError::NotAHomomorphism { .. })
        ));
        assert_eq!(
            validate_endo(4, mul, &[0, 2, 0]),
            Err(EndoError::WrongLength(3, 4))
        );
    }

    #[test]
    fn extend_generator_images_walks_products() {
        // (ℤ/4, +) is generated by 1; sending 1 ↦ 2 extends to doubling.
        let mul = |x: usize, y: usize| (x + y) % 4;
        let map = extend_generator_images(4, mul, &[(1, 2)]).unwrap();
        assert_eq!(map, vec![0, 2, 0, 2]);
        assert_eq!(validate_endo(4, mul, &map), Ok(()));

        // 2 alone does not generate.
        assert!(matches!(
            extend_generator_images(4, mul, &[(2, 0)]),
            Err(EndoError::NotGenerating {
                reached: 2,
                total: 4
            })
        ));
    }
}
