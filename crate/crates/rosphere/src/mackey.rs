//! Free Mackey functors over the constant coefficient system: fixed-point
//! functors of permutation modules Z[G/K], presented on explicit bases.
//!
//! The bottom level is Z[G/K1] + ... with the generator g of G acting by
//! cyclic translation on each orbit block. Level H is the H-fixed submodule,
//! with its basis of H-orbit sums ordered by (basis index, coset power of g).
//! Restriction is inclusion of fixed points, transfer is summation over
//! cosets, and the Weyl action is translation by g.

use crate::group::{orbit_product, Group, Level};
use crate::zlinalg::IntMat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub stab: Level,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct FreeModule {
    pub group: Group,
    pub basis: Vec<Orbit>,
    offsets: Vec<usize>,
    bottom_rank: usize,
}

impl FreeModule {
    pub fn new(group: Group, basis: Vec<Orbit>) -> FreeModule {
        let mut offsets = Vec::with_capacity(basis.len());
        let mut acc = 0usize;
        for b in &basis {
            assert!(b.stab.0 <= group.exponent);
            offsets.push(acc);
            acc += group.orbit_size(b.stab) as usize;
        }
        FreeModule { group, basis, offsets, bottom_rank: acc }
    }

    pub fn zero(group: Group) -> FreeModule {
        FreeModule::new(group, vec![])
    }

    /// The fixed-point Mackey functor of the trivial module (one G/G orbit).
    pub fn unit(group: Group, label: &str) -> FreeModule {
        FreeModule::new(group, vec![Orbit { stab: group.top_level(), label: label.to_string() }])
    }

    /// One free orbit G/H.
    pub fn single(group: Group, stab: Level, label: &str) -> FreeModule {
        FreeModule::new(group, vec![Orbit { stab, label: label.to_string() }])
    }

    pub fn bottom_rank(&self) -> usize {
        self.bottom_rank
    }

    pub fn orbit_size(&self, b: usize) -> usize {
        self.group.orbit_size(self.basis[b].stab) as usize
    }

    pub fn bottom_index(&self, b: usize, t: usize) -> usize {
        debug_assert!(t < self.orbit_size(b));
        self.offsets[b] + t
    }

    pub fn decompose_bottom(&self, idx: usize) -> (usize, usize) {
        let b = match self.offsets.binary_search(&idx) {
            Ok(b) => b,
            Err(ins) => ins - 1,
        };
        (b, idx - self.offsets[b])
    }

    /// Index translation by g^j on the bottom level.
    pub fn translate_bottom(&self, idx: usize, j: u64) -> usize {
        let (b, t) = self.decompose_bottom(idx);
        let r = self.orbit_size(b) as u64;
        self.bottom_index(b, ((t as u64 + j) % r) as usize)
    }

    /// Number of H-orbit sums contributed by basis element b at a level.
    fn level_count(&self, b: usize, level: Level) -> usize {
        let h = self.group.subgroup_order(level);
        let k = self.group.subgroup_order(self.basis[b].stab);
        (self.group.order() / h.max(k)) as usize
    }

    pub fn level_rank(&self, level: Level) -> usize {
        (0..self.basis.len()).map(|b| self.level_count(b, level)).sum()
    }

    /// Ordered level basis as (basis index, coset power) pairs.
    pub fn level_entries(&self, level: Level) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.basis.len() {
            for t in 0..self.level_count(b, level) {
                out.push((b, t));
            }
        }
        out
    }

    /// Bottom vector of the level basis element (b, t): the H-orbit sum.
    pub fn level_vector(&self, level: Level, b: usize, t: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.bottom_rank];
        let count = self.level_count(b, level);
        let r = self.orbit_size(b);
        let reps = r / count;
        for s in 0..reps {
            v[self.bottom_index(b, (t + s * count) % r)] += BigInt::one();
        }
        v
    }

    /// Inclusion of the level basis into the bottom level (columns = sums).
    pub fn inclusion(&self, level: Level) -> IntMat {
        let entries = self.level_entries(level);
        let mut m = IntMat::zeros(self.bottom_rank, entries.len());
        for (j, &(b, t)) in entries.iter().enumerate() {
            for (i, c) in self.level_vector(level, b, t).iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c.clone());
                }
            }
        }
        m
    }

    /// Express a fixed bottom vector in the level basis. None if the vector
    /// is not in the image of the inclusion.
    pub fn express_level(&self, level: Level, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.bottom_rank);
        let entries = self.level_entries(level);
        let mut coords = Vec::with_capacity(entries.len());
        for &(b, t) in &entries {
            coords.push(v[self.bottom_index(b, t)].clone());
        }
        // verify: orbit sums are disjointly supported, so leading coefficients
        // determine the expression uniquely; check the remaining slots agree
        for (j, &(b, t)) in entries.iter().enumerate() {
            let count = self.level_count(b, level);
            let r = self.orbit_size(b);
            for s in 0..r / count {
                if v[self.bottom_index(b, (t + s * count) % r)] != coords[j] {
                    return None;
                }
            }
        }
        Some(coords)
    }

    /// Action of g^j on level coordinates.
    pub fn weyl(&self, level: Level) -> IntMat {
        let entries = self.level_entries(level);
        let mut m = IntMat::zeros(entries.len(), entries.len());
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        for (j, &e) in entries.iter().enumerate() {
            pos.insert(e, j);
        }
        for (j, &(b, t)) in entries.iter().enumerate() {
            let count = self.level_count(b, level);
            let i = pos[&(b, (t + 1) % count)];
            m.set(i, j, BigInt::one());
        }
        m
    }

    /// Restriction from `level` to `level - 1` on level coordinates.
    pub fn res(&self, level: Level) -> IntMat {
        assert!(level.0 >= 1);
        let lower = Level(level.0 - 1);
        let src = self.level_entries(level);
        let dst = self.level_entries(lower);
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        for (j, &e) in dst.iter().enumerate() {
            pos.insert(e, j);
        }
        let mut m = IntMat::zeros(dst.len(), src.len());
        for (j, &(b, t)) in src.iter().enumerate() {
            let chi = self.level_count(b, level);
            let clo = self.level_count(b, lower);
            for u in 0..clo / chi {
                let i = pos[&(b, t + u * chi)];
                m.set(i, j, BigInt::one());
            }
        }
        m
    }

    /// Transfer from `level - 1` to `level` on level coordinates.
    pub fn tr(&self, level: Level) -> IntMat {
        assert!(level.0 >= 1);
        let lower = Level(level.0 - 1);
        let src = self.level_entries(lower);
        let step = self.group.order() / self.group.subgroup_order(level);
        let p = self.group.prime as u64;
        let mut m = IntMat::zeros(self.level_rank(level), src.len());
        for (j, &(b, t)) in src.iter().enumerate() {
            // sum the p coset translates at the bottom, then re-express
            let mut v = vec![BigInt::zero(); self.bottom_rank];
            for rep in 0..p {
                let base = self.level_vector(lower, b, t);
                for (i, c) in base.iter().enumerate() {
                    if !c.is_zero() {
                        let shifted = self.translate_bottom(i, rep * step);
                        v[shifted] += c;
                    }
                }
            }
            let coords = self
                .express_level(level, &v)
                .expect("transfer image is not fixed at the target level");
            for (i, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c.clone());
                }
            }
        }
        m
    }
}

/// Identification of a tensor product of bottom levels with the bottom level
/// of the box product: per box bottom index, the tuple of factor bottom
/// indices, and the reverse lookup.
#[derive(Clone, Debug)]
pub struct TupleIndex {
    pub tuples: Vec<Vec<usize>>,
    rev: HashMap<Vec<usize>, usize>,
}

impl TupleIndex {
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        *self.rev.get(tuple).unwrap_or_else(|| panic!("tuple {:?} not in box", tuple))
    }

    pub fn tuple_of(&self, idx: usize) -> &[usize] {
        &self.tuples[idx]
    }
}

/// Box product of a list of free modules. The basis consists of the diagonal
/// G-orbits on products of orbit bases; the bottom level is canonically the
/// tensor product of the bottom levels, recorded in the returned TupleIndex.
pub fn box_list(group: Group, mods: &[&FreeModule]) -> (FreeModule, TupleIndex) {
    if mods.is_empty() {
        let unit = FreeModule::unit(group, "1");
        let tuples = vec![vec![]];
        let mut rev = HashMap::new();
        rev.insert(vec![], 0usize);
        return (unit, TupleIndex { tuples, rev });
    }
    // enumerate per-factor (basis, t) tuples in lexicographic order of the
    // per-factor bottom indices; group them into diagonal orbits
    let ranks: Vec<usize> = mods.iter().map(|m| m.bottom_rank()).collect();
    if ranks.iter().any(|&r| r == 0) {
        let zero = FreeModule::zero(group);
        return (zero, TupleIndex { tuples: vec![], rev: HashMap::new() });
    }

    // canonical representative of the diagonal orbit of a tuple: translate so
    // the coordinate with the largest orbit (smallest stabilizer, first such
    // factor) sits at position 0 of its orbit
    let canon = |tuple: &[usize]| -> (Vec<usize>, usize) {
        let mut pivot = 0usize;
        let mut pivot_size = 0usize;
        for (f, &idx) in tuple.iter().enumerate() {
            let (b, _) = mods[f].decompose_bottom(idx);
            let r = mods[f].orbit_size(b);
            if r > pivot_size {
                pivot_size = r;
                pivot = f;
            }
        }
        let (_, tpiv) = mods[pivot].decompose_bottom(tuple[pivot]);
        let shift = (pivot_size - tpiv) % pivot_size;
        let rep: Vec<usize> = tuple
            .iter()
            .enumerate()
            .map(|(f, &idx)| mods[f].translate_bottom(idx, shift as u64))
            .collect();
        (rep, tpiv)
    };

    // first pass: collect orbit representatives in order of first appearance
    // of their smallest member, which is deterministic
    let total: usize = ranks.iter().product();
    let mut rep_order: Vec<Vec<usize>> = Vec::new();
    let mut rep_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut iter_tuple = |mut flat: usize| -> Vec<usize> {
        let mut t = vec![0usize; mods.len()];
        for f in (0..mods.len()).rev() {
            t[f] = flat % ranks[f];
            flat /= ranks[f];
        }
        t
    };
    for flat in 0..total {
        let tuple = iter_tuple(flat);
        let (rep, _) = canon(&tuple);
        if !rep_ids.contains_key(&rep) {
            rep_ids.insert(rep.clone(), rep_order.len());
            rep_order.push(rep);
        }
    }

    let mut basis = Vec::with_capacity(rep_order.len());
    for rep in &rep_order {
        let mut stab = group.top_level();
        let mut label_parts = Vec::new();
        for (f, &idx) in rep.iter().enumerate() {
            let (b, t) = mods[f].decompose_bottom(idx);
            stab = Level(stab.0.min(mods[f].basis[b].stab.0));
            label_parts.push(format!("{}:{}", mods[f].basis[b].label, t));
        }
        // orbit arithmetic sanity: the diagonal stabilizer is the intersection
        for (f, &idx) in rep.iter().enumerate() {
            let (b, _) = mods[f].decompose_bottom(idx);
            let (orb, _) = orbit_product(stab, mods[f].basis[b].stab, group);
            debug_assert_eq!(orb, stab);
        }
        basis.push(Orbit { stab, label: label_parts.join("|") });
    }
    let module = FreeModule::new(group, basis);

    let mut tuples = vec![Vec::new(); module.bottom_rank()];
    let mut rev = HashMap::with_capacity(module.bottom_rank());
    for flat in 0..total {
        let tuple = iter_tuple(flat);
        let (rep, tpos) = canon(&tuple);
        let b = rep_ids[&rep];
        let idx = module.bottom_index(b, tpos % module.orbit_size(b));
        tuples[idx] = tuple.clone();
        rev.insert(tuple, idx);
    }
    (module, TupleIndex { tuples, rev })
}

/// Binary box product with its bottom-level tensor identification.
pub fn box_product(a: &FreeModule, b: &FreeModule) -> (FreeModule, TupleIndex) {
    assert_eq!(a.group, b.group, "box product needs a common group");
    box_list(a.group, &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::VirtualRep;

    fn c4() -> Group {
        Group::c4()
    }

    fn z_free(g: Group) -> FreeModule {
        FreeModule::single(g, Level(0), "e")
    }

    fn z_c2(g: Group) -> FreeModule {
        FreeModule::single(g, Level(1), "c2")
    }

    fn z_fix(g: Group) -> FreeModule {
        FreeModule::unit(g, "1")
    }

    #[test]
    fn level_ranks() {
        let g = c4();
        let m = z_free(g);
        assert_eq!(m.level_rank(Level(0)), 4);
        assert_eq!(m.level_rank(Level(1)), 2);
        assert_eq!(m.level_rank(Level(2)), 1);
        let m = z_c2(g);
        assert_eq!(m.level_rank(Level(0)), 2);
        assert_eq!(m.level_rank(Level(1)), 2);
        assert_eq!(m.level_rank(Level(2)), 1);
    }

    #[test]
    fn fixed_point_structure_of_constant_z() {
        // the Lewis diagram of underline Z: res = 1, tr = index
        let g = c4();
        let m = z_fix(g);
        for l in 1..=2 {
            let res = m.res(Level(l));
            let tr = m.tr(Level(l));
            assert_eq!(res, IntMat::identity(1));
            assert_eq!(tr, IntMat::from_rows(&[vec![2]]));
        }
    }

    #[test]
    fn res_tr_on_free_orbit() {
        let g = c4();
        let m = z_free(g);
        // top -> middle restriction of the full orbit sum hits both C_2 sums
        let res = m.res(Level(2));
        assert_eq!(res, IntMat::from_rows(&[vec![1], vec![1]]));
        // weyl at bottom is the 4-cycle
        let w = m.weyl(Level(0));
        let mut expect = IntMat::zeros(4, 4);
        for j in 0..4 {
            expect.set((j + 1) % 4, j, BigInt::one());
        }
        assert_eq!(w, expect);
    }

    #[test]
    fn double_coset_identity() {
        // res o tr = sum of Weyl translates, on every free module and level
        for g in [Group::c4(), Group::new(2, 3).unwrap(), Group::new(3, 2).unwrap()] {
            for stab in 0..=g.exponent {
                let m = FreeModule::single(g, Level(stab), "x");
                for l in 1..=g.exponent {
                    let level = Level(l);
                    let lower = Level(l - 1);
                    let lhs = m.res(level).mul(&m.tr(level));
                    let step = g.order() / g.subgroup_order(level);
                    let wl = m.weyl(lower);
                    let mut pw = IntMat::identity(m.level_rank(lower));
                    let mut rhs = IntMat::zeros(m.level_rank(lower), m.level_rank(lower));
                    let reps = g.prime as u64;
                    let mut k = 0u64;
                    while k < reps {
                        // translate by g^(k * step)
                        if k > 0 {
                            for _ in 0..step {
                                pw = wl.mul(&pw);
                            }
                        }
                        for i in 0..rhs.rows() {
                            for j in 0..rhs.cols() {
                                let v = rhs.get(i, j) + pw.get(i, j);
                                rhs.set(i, j, v);
                            }
                        }
                        k += 1;
                    }
                    assert_eq!(lhs, rhs, "double coset fails g={:?} stab={} level={}", g, stab, l);
                }
            }
        }
    }

    #[test]
    fn res_injective() {
        let g = c4();
        for stab in 0..=2 {
            let m = FreeModule::single(g, Level(stab), "x");
            for l in 1..=2 {
                let res = m.res(Level(l));
                let s = crate::zlinalg::smith(&res);
                assert_eq!(s.rank(), m.level_rank(Level(l)), "res not injective");
            }
        }
    }

    #[test]
    fn box_examples() {
        let g = c4();
        // unit of box
        let (m, _) = box_product(&z_fix(g), &z_c2(g));
        assert_eq!(m.basis.len(), 1);
        assert_eq!(m.basis[0].stab, Level(1));
        // free x middle: two free orbits, bottom rank 8
        let (m, ix) = box_product(&z_free(g), &z_c2(g));
        assert_eq!(m.basis.len(), 2);
        assert!(m.basis.iter().all(|o| o.stab == Level(0)));
        assert_eq!(m.bottom_rank(), 8);
        // tensor identification is a bijection
        for ia in 0..4 {
            for ib in 0..2 {
                let idx = ix.index_of(&[ia, ib]);
                assert_eq!(ix.tuple_of(idx), &[ia, ib]);
            }
        }
        // middle x middle
        let (m, _) = box_product(&z_c2(g), &z_c2(g));
        assert_eq!(m.basis.len(), 2);
        assert!(m.basis.iter().all(|o| o.stab == Level(1)));
    }

    #[test]
    fn box_bottom_rank_multiplicative() {
        let g = Group::new(2, 3).unwrap();
        for (s1, s2) in [(0, 0), (0, 2), (1, 2), (3, 1), (2, 2)] {
            let a = FreeModule::single(g, Level(s1), "a");
            let b = FreeModule::single(g, Level(s2), "b");
            let (m, _) = box_product(&a, &b);
            assert_eq!(m.bottom_rank(), a.bottom_rank() * b.bottom_rank());
        }
    }

    #[test]
    fn box_equivariance_of_identification() {
        // translating every tensor factor by g matches translating the box index
        let g = c4();
        let a = z_free(g);
        let b = z_c2(g);
        let (m, ix) = box_product(&a, &b);
        for ia in 0..a.bottom_rank() {
            for ib in 0..b.bottom_rank() {
                let idx = ix.index_of(&[ia, ib]);
                let moved = ix.index_of(&[a.translate_bottom(ia, 1), b.translate_bottom(ib, 1)]);
                assert_eq!(m.translate_bottom(idx, 1), moved);
            }
        }
    }

    #[test]
    fn split_virtual_reexported_shape() {
        // exercise VirtualRep::split used throughout chain assembly
        let v = VirtualRep::c4(1, -1);
        let (p, m) = v.split();
        assert_eq!(p, VirtualRep::sigma(1));
        assert_eq!(m, VirtualRep::lambda_k(2, 1));
    }
}
