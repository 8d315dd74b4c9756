//! Equivariant cellular chain complexes for representation spheres.
//!
//! An actual representation V of C_{p^n} gets the flag cell structure: one
//! orbit cell per dimension, sign cells first, then each rotation block
//! contributing an axis cell and a quadrant cell per copy. Differentials
//! alternate between (1 - g)-type maps and orbit norms; at a junction
//! between blocks the norm of the lower orbit appears. For C_4 this is
//! exactly the classical complex with d1 x+ = 1, d x+ = x+ -/+ x- in the
//! sign range and the quadrant/axis differentials in the rotation range.
//!
//! Negative spheres are Spanier-Whitehead duals: same free modules at
//! negated degrees with transposed differentials. Virtual spheres are box
//! products of a positive part and a dual part, organized as `Model`s: an
//! ordered list of factor complexes boxed together, with full bookkeeping
//! of the bottom-level tensor identification.

use crate::group::{Group, Level, VirtualRep};
use crate::mackey::{box_list, FreeModule, Orbit, TupleIndex};
use crate::zlinalg::IntMat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A bounded chain complex of free Mackey functors, held at the bottom level.
#[derive(Clone, Debug)]
pub struct Complex {
    pub group: Group,
    modules: BTreeMap<i64, FreeModule>,
    /// diffs[k] : C_k -> C_{k-1}, as a matrix on bottom levels.
    diffs: BTreeMap<i64, IntMat>,
}

impl Complex {
    pub fn new(group: Group) -> Complex {
        Complex { group, modules: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn insert(&mut self, k: i64, module: FreeModule, diff_to_below: Option<IntMat>) {
        if let Some(d) = diff_to_below {
            self.diffs.insert(k, d);
        }
        self.modules.insert(k, module);
    }

    pub fn lo(&self) -> i64 {
        self.modules.keys().next().copied().unwrap_or(0)
    }

    pub fn hi(&self) -> i64 {
        self.modules.keys().next_back().copied().unwrap_or(0)
    }

    pub fn module(&self, k: i64) -> Option<&FreeModule> {
        self.modules.get(&k)
    }

    pub fn bottom_rank(&self, k: i64) -> usize {
        self.module(k).map_or(0, |m| m.bottom_rank())
    }

    /// The differential C_k -> C_{k-1}, a zero matrix when absent.
    pub fn diff(&self, k: i64) -> IntMat {
        match self.diffs.get(&k) {
            Some(d) => d.clone(),
            None => IntMat::zeros(self.bottom_rank(k - 1), self.bottom_rank(k)),
        }
    }

    pub fn check_dd_zero(&self) -> bool {
        for k in self.lo()..=self.hi() {
            let a = self.diff(k);
            let b = self.diff(k + 1);
            if !a.mul(&b).is_zero() {
                return false;
            }
        }
        true
    }

    /// Bottom-level homology ranks: (free rank, torsion factors) per degree.
    pub fn bottom_homology(&self, k: i64) -> (usize, Vec<BigInt>) {
        let h = crate::zlinalg::HomologyGroup::new(&self.diff(k + 1), &self.diff(k), 0);
        (h.free_rank, h.torsion.clone())
    }

    /// Plain-text dump of degrees, basis labels and differentials. The format
    /// is stable and used by golden-file tests.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for k in (self.lo()..=self.hi()).rev() {
            let m = match self.module(k) {
                Some(m) => m,
                None => continue,
            };
            let cells: Vec<String> = m
                .basis
                .iter()
                .map(|o| format!("{}[G/{}^{}]", o.label, self.group.prime, o.stab.0))
                .collect();
            writeln!(s, "deg {}: {}", k, cells.join(" ")).unwrap();
            if self.diffs.contains_key(&k) {
                let d = self.diff(k);
                writeln!(s, "  d{} =", k).unwrap();
                for i in 0..d.rows() {
                    let row: Vec<String> = (0..d.cols()).map(|j| d.get(i, j).to_string()).collect();
                    writeln!(s, "    [{}]", row.join(" ")).unwrap();
                }
            }
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Op {
    Start,
    Collapse,
    Alpha(i8),
    Nu(i8),
    NormJct(i8),
    AlphaJct,
}

/// The flag cell complex of S^V for an actual representation V with no
/// trivial summands: 0 -> Z[G/K_D] -> ... -> Z[G/K_1] -> Z -> 0.
pub fn positive_flag(group: Group, rep: &VirtualRep) -> Complex {
    assert!(rep.is_actual(), "positive_flag needs an actual representation");
    assert_eq!(rep.trivial, 0, "trivial summands are handled as degree shifts");
    assert!(rep.valid_for(group), "representation invalid for this group");

    // cells in increasing degree: sign cells, then rotation blocks by
    // increasing k (decreasing stabilizer)
    let mut cells: Vec<(Level, String)> = Vec::new();
    if rep.sign > 0 {
        let stab = Level(group.exponent - 1);
        for i in 1..=rep.sign {
            cells.push((stab, format!("x{}+", i)));
        }
    }
    for (&k, &m) in &rep.rotations {
        let stab = Level(group.exponent - k);
        for j in 1..=m {
            cells.push((stab, format!("(x+,0)L{}.{}", k, j)));
            cells.push((stab, format!("(x+,y+)L{}.{}", k, j)));
        }
    }

    let mut cx = Complex::new(group);
    cx.insert(0, FreeModule::unit(group, "1"), None);

    let mut prev_op = Op::Start;
    let mut prev_stab = group.top_level();
    for (i, (stab, label)) in cells.iter().enumerate() {
        let deg = i as i64 + 1;
        let r_cur = group.orbit_size(*stab);
        let r_prev = group.orbit_size(prev_stab);
        let op = if r_cur == r_prev {
            match prev_op {
                Op::Collapse => Op::Alpha(1),
                Op::Alpha(e) => Op::Nu(e),
                Op::Nu(e) => Op::Alpha(e),
                Op::NormJct(e) => Op::Alpha(e),
                Op::AlphaJct => Op::Alpha(-1),
                Op::Start => unreachable!("same orbit as the base point"),
            }
        } else {
            assert!(r_cur > r_prev, "cells must be ordered by decreasing stabilizer");
            match prev_op {
                Op::Start => Op::Collapse,
                Op::Collapse => {
                    assert_eq!(r_prev, 2);
                    Op::AlphaJct
                }
                Op::Alpha(e) => Op::NormJct(e),
                Op::Nu(1) => {
                    assert_eq!(r_prev, 2, "norm-ended runs junction only from sign blocks");
                    Op::AlphaJct
                }
                other => unreachable!("junction after {:?}", other),
            }
        };

        let module = FreeModule::new(group, vec![Orbit { stab: *stab, label: label.clone() }]);
        let tgt_rank = cx.bottom_rank(deg - 1);
        let rp = r_prev as usize;
        let mut d = IntMat::zeros(tgt_rank, r_cur as usize);
        // polynomial q(c) applied in the target ring of size r_prev; same-run
        // operators act in the current ring, where r_prev == r_cur
        let poly: Vec<BigInt> = match op {
            Op::Collapse => vec![BigInt::one()],
            Op::Alpha(e) => vec![BigInt::one(), BigInt::from(-(e as i64))],
            Op::AlphaJct => vec![BigInt::one(), BigInt::from(-1)],
            Op::Nu(e) | Op::NormJct(e) => (0..rp)
                .map(|j| if e > 0 || j % 2 == 0 { BigInt::one() } else { BigInt::from(-1) })
                .collect(),
            Op::Start => unreachable!(),
        };
        for t in 0..r_cur as usize {
            for (j, c) in poly.iter().enumerate() {
                if !c.is_zero() {
                    d.add_assign_at((t + j) % rp, t, c);
                }
            }
        }
        cx.insert(deg, module, Some(d));
        prev_op = op;
        prev_stab = *stab;
    }

    debug_assert!(cx.check_dd_zero(), "d o d != 0 in flag complex for {}", rep);
    cx
}

/// Spanier-Whitehead dual: same modules at negated degrees, transposed
/// differentials (the dual of a free Mackey functor on G/H is free on G/H).
pub fn dual_complex(c: &Complex) -> Complex {
    let mut out = Complex::new(c.group);
    for k in c.lo()..=c.hi() {
        if let Some(m) = c.module(k) {
            out.modules.insert(-k, m.clone());
        }
    }
    for k in c.lo()..=c.hi() {
        if c.diffs.contains_key(&k) {
            // d_k : C_k -> C_{k-1} dualizes to degree -(k-1) -> -k
            out.diffs.insert(-k + 1, c.diff(k).transpose());
        }
    }
    out
}

/// One factor of a box model.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Factor {
    Pos(VirtualRep),
    Dual(VirtualRep),
}

impl Factor {
    pub fn rep(&self) -> &VirtualRep {
        match self {
            Factor::Pos(v) | Factor::Dual(v) => v,
        }
    }

    pub fn complex(&self, group: Group) -> Complex {
        match self {
            Factor::Pos(v) => positive_flag(group, v),
            Factor::Dual(v) => dual_complex(&positive_flag(group, v)),
        }
    }
}

/// Cache key of a model: its factor list and degree shift.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelKey {
    pub factors: Vec<Factor>,
    pub shift: i64,
}

struct Block {
    fdegs: Vec<i64>,
    offset: usize,
    tindex: TupleIndex,
}

struct DegreeData {
    blocks: Vec<Block>,
}

/// A box product of factor complexes with a degree shift; the canonical
/// chain model of a point of the grading lattice is
/// `[Pos(plus part), Dual(minus part)]` shifted by the trivial summands.
pub struct Model {
    pub group: Group,
    pub key: ModelKey,
    factor_complexes: Vec<Complex>,
    complex: Complex,
    degrees: BTreeMap<i64, DegreeData>,
}

impl Model {
    pub fn build(group: Group, key: ModelKey) -> Model {
        let factor_complexes: Vec<Complex> =
            key.factors.iter().map(|f| f.complex(group)).collect();
        let k = factor_complexes.len();

        // all factor-degree tuples, grouped by total degree
        let mut tuples_by_deg: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        let mut stack: Vec<Vec<i64>> = vec![vec![]];
        for fc in &factor_complexes {
            let mut next = Vec::new();
            for t in &stack {
                for d in fc.lo()..=fc.hi() {
                    if fc.module(d).is_some() {
                        let mut t2 = t.clone();
                        t2.push(d);
                        next.push(t2);
                    }
                }
            }
            stack = next;
        }
        for t in stack {
            let total: i64 = t.iter().sum::<i64>() + key.shift;
            tuples_by_deg.entry(total).or_default().push(t);
        }
        for v in tuples_by_deg.values_mut() {
            v.sort();
        }

        let mut complex = Complex::new(group);
        let mut degrees = BTreeMap::new();
        for (&deg, fdeg_list) in &tuples_by_deg {
            let mut blocks = Vec::new();
            let mut basis: Vec<Orbit> = Vec::new();
            let mut offset = 0usize;
            for fdegs in fdeg_list {
                let mods: Vec<&FreeModule> = fdegs
                    .iter()
                    .enumerate()
                    .map(|(f, &d)| factor_complexes[f].module(d).unwrap())
                    .collect();
                let (bm, tindex) = box_list(group, &mods);
                for o in &bm.basis {
                    basis.push(Orbit {
                        stab: o.stab,
                        label: format!("{:?}@{}", fdegs, o.label),
                    });
                }
                let rank = bm.bottom_rank();
                blocks.push(Block { fdegs: fdegs.clone(), offset, tindex });
                offset += rank;
            }
            complex.modules.insert(deg, FreeModule::new(group, basis));
            degrees.insert(deg, DegreeData { blocks });
        }

        let mut model = Model {
            group,
            key,
            factor_complexes,
            complex,
            degrees,
        };

        // differentials with Koszul signs
        let lo = model.complex.lo();
        let hi = model.complex.hi();
        let mut diffs = BTreeMap::new();
        for deg in lo + 1..=hi {
            let rows = model.complex.bottom_rank(deg - 1);
            let cols = model.complex.bottom_rank(deg);
            let mut d = IntMat::zeros(rows, cols);
            let dd = &model.degrees[&deg];
            for block in &dd.blocks {
                for local in 0..block.tindex.tuples.len() {
                    let src = block.offset + local;
                    let tuple = block.tindex.tuple_of(local).to_vec();
                    let mut sign_acc = 0i64;
                    for f in 0..k {
                        let fd = block.fdegs[f];
                        let fc = &model.factor_complexes[f];
                        if fc.module(fd - 1).is_some() {
                            let dmat = fc.diff(fd);
                            let mut tgt_fdegs = block.fdegs.clone();
                            tgt_fdegs[f] -= 1;
                            for r in 0..dmat.rows() {
                                let c = dmat.get(r, tuple[f]);
                                if c.is_zero() {
                                    continue;
                                }
                                let mut tgt_tuple = tuple.clone();
                                tgt_tuple[f] = r;
                                let tgt =
                                    model.bottom_index(deg - 1, &tgt_fdegs, &tgt_tuple);
                                let val = if sign_acc % 2 == 0 { c.clone() } else { -c.clone() };
                                d.add_assign_at(tgt, src, &val);
                            }
                        }
                        sign_acc += block.fdegs[f];
                    }
                }
            }
            diffs.insert(deg, d);
        }
        model.complex.diffs = diffs;
        debug_assert!(model.complex.check_dd_zero(), "d o d != 0 in box model");
        model
    }

    /// Canonical model of a grading point: positive part boxed with the dual
    /// of the negative part, trivial summands as a degree shift.
    pub fn canonical_key(v: &VirtualRep) -> ModelKey {
        let (plus, minus) = v.split();
        let shift = plus.trivial - minus.trivial;
        let mut factors = Vec::new();
        let p_nt = VirtualRep { trivial: 0, ..plus.clone() }.normalized();
        let m_nt = VirtualRep { trivial: 0, ..minus.clone() }.normalized();
        if !p_nt.is_zero() {
            factors.push(Factor::Pos(p_nt));
        }
        if !m_nt.is_zero() {
            factors.push(Factor::Dual(m_nt));
        }
        ModelKey { factors, shift }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn factor_complex(&self, f: usize) -> &Complex {
        &self.factor_complexes[f]
    }

    pub fn lo(&self) -> i64 {
        self.complex.lo()
    }

    pub fn hi(&self) -> i64 {
        self.complex.hi()
    }

    /// Global bottom index at `deg` of a factor-degree tuple plus per-factor
    /// bottom indices.
    pub fn bottom_index(&self, deg: i64, fdegs: &[i64], tuple: &[usize]) -> usize {
        let dd = self.degrees.get(&deg).expect("degree out of range");
        let block = dd
            .blocks
            .iter()
            .find(|b| b.fdegs == fdegs)
            .expect("factor degree tuple not present");
        block.offset + block.tindex.index_of(tuple)
    }

    /// Inverse of `bottom_index`.
    pub fn tuple_at(&self, deg: i64, idx: usize) -> (&[i64], &[usize]) {
        let dd = self.degrees.get(&deg).expect("degree out of range");
        let mut chosen = None;
        for b in &dd.blocks {
            if idx >= b.offset && idx - b.offset < b.tindex.tuples.len() {
                chosen = Some(b);
            }
        }
        let b = chosen.expect("index out of range");
        (&b.fdegs, b.tindex.tuple_of(idx - b.offset))
    }

    pub fn blocks_at(&self, deg: i64) -> Vec<&[i64]> {
        self.degrees
            .get(&deg)
            .map(|dd| dd.blocks.iter().map(|b| b.fdegs.as_slice()).collect())
            .unwrap_or_default()
    }
}

/// The chain complex of S^v for any virtual v (the spec's sphere_complex).
pub fn sphere_complex(group: Group, v: &VirtualRep) -> Complex {
    Model::build(group, Model::canonical_key(v)).complex().clone()
}

/// Tensor two homogeneous bottom-level elements of two models into the
/// concatenated model. No Koszul signs arise: this is the inclusion
/// X_a (x) Y_b -> (X (x) Y)_{a+b} on elements.
pub fn tensor_elements(
    mx: &Model,
    degx: i64,
    vx: &[BigInt],
    my: &Model,
    degy: i64,
    vy: &[BigInt],
    mxy: &Model,
) -> Vec<BigInt> {
    let nx = mx.key.factors.len();
    let deg = degx + degy;
    let mut out = vec![BigInt::zero(); mxy.complex().bottom_rank(deg)];
    for (ix, cx) in vx.iter().enumerate() {
        if cx.is_zero() {
            continue;
        }
        let (fdx, tx) = mx.tuple_at(degx, ix);
        for (iy, cy) in vy.iter().enumerate() {
            if cy.is_zero() {
                continue;
            }
            let (fdy, ty) = my.tuple_at(degy, iy);
            let mut fdegs = Vec::with_capacity(nx + my.key.factors.len());
            fdegs.extend_from_slice(fdx);
            fdegs.extend_from_slice(fdy);
            let mut tuple = Vec::with_capacity(fdegs.len());
            tuple.extend_from_slice(tx);
            tuple.extend_from_slice(ty);
            let idx = mxy.bottom_index(deg, &fdegs, &tuple);
            out[idx] += cx * cy;
        }
    }
    out
}
