//! The catalog of C_4 Mackey functors appearing in the homology of
//! representation spheres, and identification of computed presentations
//! against it (including direct sums of up to three entries).
//!
//! Levels are listed bottom to top (index = subgroup order exponent).
//! Generators per level follow the same convention as computed homology:
//! torsion generators first, then free ones.

use crate::homology::Presentation;
use crate::zlinalg::IntMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// An abstract Mackey functor shape for C_4: per-level generator orders
/// (0 = infinite) and structure matrices in those generators.
#[derive(Clone, Debug)]
pub struct Shape {
    /// orders[level][generator]; level 0 = bottom, 2 = top.
    pub orders: Vec<Vec<u64>>,
    /// res[l] : level l+1 -> l.
    pub res: Vec<IntMat>,
    /// tr[l] : level l -> l+1.
    pub tr: Vec<IntMat>,
    /// weyl[l] : level l -> l.
    pub weyl: Vec<IntMat>,
}

fn mat(rows: usize, cols: usize, entries: &[i64]) -> IntMat {
    assert_eq!(entries.len(), rows * cols);
    let mut m = IntMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, BigInt::from(entries[i * cols + j]));
        }
    }
    m
}

/// The thirteen base names of the catalog, in canonical order.
pub const BASE_NAMES: [&str; 13] = [
    "Z", "Z-", "<Z/4>", "<Z/2>", "bar<Z/2>", "L", "p*L", "L-", "p*L-", "Q", "Q#", "L#", "Z-b",
];

/// Lewis diagram of a base catalog entry.
pub fn base_shape(name: &str) -> Shape {
    // levels encoded as: -1 absent, 0 infinite cyclic, d > 0 cyclic of order d
    const ABSENT: i64 = -1;
    const Z: i64 = 0;
    // helper: levels (bot, mid, top) with 0 or 1 generator each
    let s = |bot: i64, mid: i64, top: i64,
             r10: i64, t01: i64, r21: i64, t12: i64, wb: i64, wm: i64|
     -> Shape {
        let dim = |x: i64| -> usize { if x == ABSENT { 0 } else { 1 } };
        let ord = |x: i64| -> Vec<u64> { if x == ABSENT { vec![] } else { vec![x as u64] } };
        let m = |rows: usize, cols: usize, v: i64| -> IntMat {
            if rows == 1 && cols == 1 { mat(1, 1, &[v]) } else { IntMat::zeros(rows, cols) }
        };
        Shape {
            orders: vec![ord(bot), ord(mid), ord(top)],
            res: vec![m(dim(bot), dim(mid), r10), m(dim(mid), dim(top), r21)],
            tr: vec![m(dim(mid), dim(bot), t01), m(dim(top), dim(mid), t12)],
            weyl: vec![m(dim(bot), dim(bot), wb), m(dim(mid), dim(mid), wm), m(dim(top), dim(top), 1)],
        }
    };
    match name {
        "Z" => s(Z, Z, Z, 1, 2, 1, 2, 1, 1),
        "Z-" => s(Z, Z, ABSENT, 1, 2, 0, 0, -1, -1),
        "<Z/4>" => s(ABSENT, 2, 4, 0, 0, 1, 2, 1, 1),
        "<Z/2>" => s(ABSENT, ABSENT, 2, 0, 0, 0, 0, 1, 1),
        "bar<Z/2>" => s(ABSENT, 2, ABSENT, 0, 0, 0, 0, 1, 1),
        "L" => s(Z, Z, Z, 2, 1, 2, 1, 1, 1),
        "p*L" => s(Z, Z, Z, 1, 2, 2, 1, 1, 1),
        "L-" => s(Z, Z, 2, 2, 1, 0, 1, -1, -1),
        "p*L-" => s(Z, Z, 2, 1, 2, 0, 1, -1, -1),
        "Q" => s(ABSENT, 2, 2, 0, 0, 0, 1, 1, 1),
        "Q#" => s(ABSENT, 2, 2, 0, 0, 1, 0, 1, 1),
        "L#" => s(Z, Z, Z, 2, 1, 1, 2, 1, 1),
        "Z-b" => s(Z, Z, ABSENT, 2, 1, 0, 0, -1, -1),
        other => panic!("unknown catalog name {}", other),
    }
}

/// Blockwise direct sum of shapes.
pub fn sum_shapes(parts: &[&Shape]) -> Shape {
    let levels = 3usize;
    let mut orders = vec![Vec::new(); levels];
    for p in parts {
        for l in 0..levels {
            orders[l].extend(p.orders[l].iter().copied());
        }
    }
    let block = |sel: &dyn Fn(&Shape) -> &IntMat, rows_l: usize, cols_l: usize| -> IntMat {
        let rows: usize = parts.iter().map(|p| p.orders[rows_l].len()).sum();
        let cols: usize = parts.iter().map(|p| p.orders[cols_l].len()).sum();
        let mut m = IntMat::zeros(rows, cols);
        let mut ro = 0usize;
        let mut co = 0usize;
        for p in parts {
            let b = sel(p);
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += p.orders[rows_l].len();
            co += p.orders[cols_l].len();
        }
        m
    };
    Shape {
        res: vec![
            block(&|p| &p.res[0], 0, 1),
            block(&|p| &p.res[1], 1, 2),
        ],
        tr: vec![
            block(&|p| &p.tr[0], 1, 0),
            block(&|p| &p.tr[1], 2, 1),
        ],
        weyl: vec![
            block(&|p| &p.weyl[0], 0, 0),
            block(&|p| &p.weyl[1], 1, 1),
            block(&|p| &p.weyl[2], 2, 2),
        ],
        orders,
    }
}

fn shape_of(p: &Presentation) -> Shape {
    use num_traits::ToPrimitive;
    let orders: Vec<Vec<u64>> = p
        .levels
        .iter()
        .map(|h| {
            (0..h.rank())
                .map(|i| h.order(i).to_u64().unwrap_or(u64::MAX))
                .collect()
        })
        .collect();
    Shape {
        orders,
        res: p.res.clone(),
        tr: p.tr.clone(),
        weyl: p.weyl.clone(),
    }
}

/// All homomorphisms between two groups given as generator-order lists,
/// with small coefficient ranges for the free part.
fn enumerate_homs(src: &[u64], dst: &[u64]) -> Vec<IntMat> {
    // entry (i, j): coefficient of dst gen i in the image of src gen j.
    // constraint: src_order[j] * entry == 0 in dst (mod dst_order[i]).
    let rows = dst.len();
    let cols = src.len();
    let mut choices: Vec<Vec<i64>> = Vec::new();
    for j in 0..cols {
        for i in 0..rows {
            let range: Vec<i64> = if dst[i] == 0 {
                if src[j] == 0 {
                    vec![-1, 0, 1]
                } else {
                    vec![0] // torsion cannot map to a free generator
                }
            } else {
                let d = dst[i] as i64;
                if src[j] == 0 {
                    (0..d).collect()
                } else {
                    // need src[j] * e == 0 mod d
                    let s = src[j] as i64;
                    (0..d).filter(|e| (e * s) % d == 0).collect()
                }
            };
            choices.push(range);
        }
    }
    let mut out = Vec::new();
    let total = choices.iter().map(|c| c.len()).product::<usize>();
    for mut idx in 0..total {
        let mut m = IntMat::zeros(rows, cols);
        for (slot, ch) in choices.iter().enumerate() {
            let pick = ch[idx % ch.len()];
            idx /= ch.len();
            let j = slot / rows;
            let i = slot % rows;
            m.set(i, j, BigInt::from(pick));
        }
        out.push(m);
    }
    out
}

/// Does the matrix define an isomorphism between the groups?
fn is_iso(m: &IntMat, src: &[u64], dst: &[u64]) -> bool {
    if src.len() != dst.len() {
        // quick reject: ranks must match (orders are matched beforehand)
        return false;
    }
    // free parts must map by a unimodular square block
    let free_src: Vec<usize> = (0..src.len()).filter(|&j| src[j] == 0).collect();
    let free_dst: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] == 0).collect();
    if free_src.len() != free_dst.len() {
        return false;
    }
    if !free_src.is_empty() {
        let k = free_src.len();
        let sub = IntMat::from_fn(k, k, |a, b| m.get(free_dst[a], free_src[b]).clone());
        let s = crate::zlinalg::smith(&sub);
        if s.rank() != k || s.diag().iter().any(|d| !d.is_one()) {
            return false;
        }
    }
    // finite parts: check injectivity on the full torsion subgroup
    let tor_src: Vec<usize> = (0..src.len()).filter(|&j| src[j] != 0).collect();
    let tor_dst: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] != 0).collect();
    let total: u64 = tor_src.iter().map(|&j| src[j]).product();
    if total != tor_dst.iter().map(|&i| dst[i]).product::<u64>() {
        return false;
    }
    if total > 1 << 16 {
        return false; // out of scope for the catalog range
    }
    let mut seen = std::collections::HashSet::new();
    let card = total as usize;
    for mut e in 0..card {
        // element of the source torsion subgroup
        let mut coords = vec![0i64; src.len()];
        for &j in &tor_src {
            coords[j] = (e % src[j] as usize) as i64;
            e /= src[j] as usize;
        }
        // image, reduced in dst (free coordinates must vanish for torsion elts)
        let mut img = vec![0i64; dst.len()];
        for i in 0..dst.len() {
            let mut acc = BigInt::zero();
            for j in 0..src.len() {
                acc += m.get(i, j) * coords[j];
            }
            if dst[i] == 0 {
                if !acc.is_zero() {
                    return false;
                }
            } else {
                use num_traits::ToPrimitive;
                img[i] = acc.mod_floor(&BigInt::from(dst[i])).to_i64().unwrap();
            }
        }
        if !seen.insert(img) {
            return false;
        }
    }
    true
}

fn mats_equal_mod(a: &IntMat, b: &IntMat, orders: &[u64]) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let diff = a.get(i, j) - b.get(i, j);
            let ok = if orders[i] == 0 {
                diff.is_zero()
            } else {
                diff.mod_floor(&BigInt::from(orders[i])).is_zero()
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Search for level isomorphisms conjugating `got` onto `want`.
fn find_witness(got: &Shape, want: &Shape) -> Option<Vec<IntMat>> {
    for l in 0..3 {
        let mut a = got.orders[l].clone();
        let mut b = want.orders[l].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let cands: Vec<Vec<IntMat>> = (0..3)
        .map(|l| {
            enumerate_homs(&got.orders[l], &want.orders[l])
                .into_iter()
                .filter(|m| is_iso(m, &got.orders[l], &want.orders[l]))
                .collect()
        })
        .collect();
    for phi0 in &cands[0] {
        for phi1 in &cands[1] {
            // conditions between levels 0 and 1
            let r_ok = mats_equal_mod(
                &phi0.mul(&got.res[0]),
                &want.res[0].mul(phi1),
                &want.orders[0],
            );
            if !r_ok {
                continue;
            }
            let t_ok = mats_equal_mod(
                &phi1.mul(&got.tr[0]),
                &want.tr[0].mul(phi0),
                &want.orders[1],
            );
            if !t_ok {
                continue;
            }
            let w_ok = mats_equal_mod(
                &phi0.mul(&got.weyl[0]),
                &want.weyl[0].mul(phi0),
                &want.orders[0],
            ) && mats_equal_mod(
                &phi1.mul(&got.weyl[1]),
                &want.weyl[1].mul(phi1),
                &want.orders[1],
            );
            if !w_ok {
                continue;
            }
            for phi2 in &cands[2] {
                let ok = mats_equal_mod(
                    &phi1.mul(&got.res[1]),
                    &want.res[1].mul(phi2),
                    &want.orders[1],
                ) && mats_equal_mod(
                    &phi2.mul(&got.tr[1]),
                    &want.tr[1].mul(phi1),
                    &want.orders[2],
                ) && mats_equal_mod(
                    &phi2.mul(&got.weyl[2]),
                    &want.weyl[2].mul(phi2),
                    &want.orders[2],
                );
                if ok {
                    return Some(vec![phi0.clone(), phi1.clone(), phi2.clone()]);
                }
            }
        }
    }
    None
}

/// A successful identification: catalog summands plus the witnessing
/// level-wise isomorphisms.
pub struct Identified {
    pub summands: Vec<&'static str>,
    pub witness: Vec<IntMat>,
}

impl Identified {
    pub fn name(&self) -> String {
        render_sum(&self.summands)
    }
}

/// Canonical rendering of a direct sum: free rank descending, then catalog
/// order, joined with '+'. Matches the tables ("L+<Z/2>", "Z-+<Z/2>", ...).
pub fn render_sum(summands: &[&str]) -> String {
    if summands.is_empty() {
        return "0".to_string();
    }
    let free_weight = |n: &str| -> i64 {
        match n {
            "Z" | "L" | "p*L" | "L#" => 3,
            "Z-" | "L-" | "p*L-" | "Z-b" => 2,
            _ => 0,
        }
    };
    let index = |n: &str| BASE_NAMES.iter().position(|b| *b == n).unwrap_or(usize::MAX);
    let mut v: Vec<&str> = summands.to_vec();
    v.sort_by_key(|n| (-free_weight(n), index(n)));
    v.join("+")
}

/// Identify a computed C_4 presentation against the catalog, trying sums of
/// up to three base entries. Returns None (an "unknown", not an error) when
/// nothing matches.
pub fn identify(p: &Presentation) -> Option<Identified> {
    assert_eq!(p.group.prime, 2);
    assert_eq!(p.group.exponent, 2, "the catalog is specific to C_4");
    let got = shape_of(p);
    if got.orders.iter().all(|o| o.is_empty()) {
        return Some(Identified { summands: vec![], witness: vec![IntMat::zeros(0, 0); 3] });
    }

    // candidate multisets, filtered by level invariants
    let mut inv_got: Vec<Vec<u64>> = got.orders.clone();
    for v in &mut inv_got {
        v.sort_unstable();
    }
    let n = BASE_NAMES.len();
    let mut try_parts = |parts: &[usize]| -> Option<Identified> {
        let shapes: Vec<Shape> = parts.iter().map(|&i| base_shape(BASE_NAMES[i])).collect();
        let refs: Vec<&Shape> = shapes.iter().collect();
        let want = sum_shapes(&refs);
        let mut inv_want: Vec<Vec<u64>> = want.orders.clone();
        for v in &mut inv_want {
            v.sort_unstable();
        }
        if inv_want != inv_got {
            return None;
        }
        find_witness(&got, &want).map(|witness| Identified {
            summands: parts.iter().map(|&i| BASE_NAMES[i]).collect(),
            witness,
        })
    };

    for i in 0..n {
        if let Some(found) = try_parts(&[i]) {
            return Some(found);
        }
    }
    for i in 0..n {
        for j in i..n {
            if let Some(found) = try_parts(&[i, j]) {
                return Some(found);
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if let Some(found) = try_parts(&[i, j, k]) {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// identify, rendered: catalog name, or the raw level groups for unknowns.
pub fn identify_name(p: &Presentation) -> String {
    match identify(p) {
        Some(id) => id.name(),
        None => format!("?({})", p.describe_levels()),
    }
}
