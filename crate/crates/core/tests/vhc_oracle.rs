//! Valid hook configurations checked against a lattice-point rasterization of
//! the hook paths, which shares no geometry code with the library.

use std::collections::BTreeSet;

use stacksort::symmetric;
use stacksort::vhc::{enumerate_vhcs, is_sorted_via_vhc};
use stacksort::{Dynamics, Permutation};

type Point = (usize, u32);

/// Every lattice point on the L-shaped path from (sw, π_sw) to (ne, π_ne).
fn raster(p: &Permutation, sw: usize, ne: usize) -> BTreeSet<Point> {
    let (lo, hi) = (p.at(sw), p.at(ne));
    (lo..=hi).map(|y| (sw, y)).chain((sw..=ne).map(|x| (x, hi))).collect()
}

fn oracle_valid(p: &Permutation, hooks: &[(usize, usize)]) -> bool {
    let paths: Vec<_> = hooks.iter().map(|&(sw, ne)| raster(p, sw, ne)).collect();
    // A plot point is above a hook if the hook passes strictly below it in
    // the same column and the point is not on the hook.
    for path in &paths {
        for a in 1..=p.len() {
            let pt = (a, p.at(a));
            if !path.contains(&pt) && path.iter().any(|&(x, y)| x == a && y < pt.1) {
                return false;
            }
        }
    }
    for i in 0..hooks.len() {
        for j in i + 1..hooks.len() {
            let shared: Vec<_> = paths[i].intersection(&paths[j]).copied().collect();
            let (a, b) = (hooks[i], hooks[j]);
            let allowed = if a.1 == b.0 {
                Some((a.1, p.at(a.1)))
            } else if b.1 == a.0 {
                Some((b.1, p.at(b.1)))
            } else {
                None
            };
            match (shared.as_slice(), allowed) {
                ([], _) => {}
                ([only], Some(ok)) if *only == ok => {}
                _ => return false,
            }
        }
    }
    true
}

/// Every assignment of a northeast endpoint to each descent, filtered.
fn oracle_enumerate(p: &Permutation) -> Vec<Vec<usize>> {
    let descents = p.descents();
    let choices: Vec<Vec<usize>> = descents
        .iter()
        .map(|&d| (d + 1..=p.len()).filter(|&j| p.at(j) > p.at(d)).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; descents.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let hooks: Vec<_> = descents.iter().zip(&idx).enumerate().map(|(u, (&d, &k))| (d, choices[u][k])).collect();
        if oracle_valid(p, &hooks) {
            out.push(hooks.iter().map(|h| h.1).collect());
        }
        let mut u = descents.len();
        loop {
            if u == 0 {
                out.sort();
                return out;
            }
            u -= 1;
            idx[u] += 1;
            if idx[u] < choices[u].len() {
                break;
            }
            idx[u] = 0;
        }
    }
}

#[test]
fn enumeration_matches_tuple_filter_oracle() {
    for n in 1..=7 {
        for p in symmetric::all(n) {
            let got: Vec<_> = enumerate_vhcs(&p).iter().map(|c| c.northeast_positions()).collect();
            assert_eq!(got, oracle_enumerate(&p), "{}", p.compact());
        }
    }
}

#[test]
fn figure_four_count_from_oracle() {
    let p: Permutation = "3142567".parse().unwrap();
    assert_eq!(oracle_enumerate(&p).len(), 6);
    assert_eq!(enumerate_vhcs(&p).len(), 6);
}

#[test]
fn configuration_structure() {
    for n in 1..=7 {
        for p in symmetric::all(n) {
            let bottoms: BTreeSet<usize> = p.descents().iter().map(|d| d + 1).collect();
            for c in enumerate_vhcs(&p) {
                assert!(c.is_valid());
                assert_eq!(c.hooks.len(), p.des());
                let ne: BTreeSet<usize> = c.northeast_positions().into_iter().collect();
                assert_eq!(ne.len(), c.hooks.len(), "northeast endpoints repeat in {}", p.compact());
                assert!(ne.is_disjoint(&bottoms), "descent bottom used as northeast endpoint in {}", p.compact());
            }
        }
    }
}

#[test]
fn sorted_iff_configuration_exists() {
    let d = Dynamics::default();
    for n in 1..=8 {
        let table = d.table(n).unwrap();
        for (r, p) in symmetric::all(n).enumerate() {
            assert_eq!(is_sorted_via_vhc(&p), table.fertility(r as u32) > 0, "{}", p.compact());
        }
    }
}
