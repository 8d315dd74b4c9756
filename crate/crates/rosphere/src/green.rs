//! The multiplicative layer. Products of homology classes are computed at
//! chain level: lift both factors to cycles, tensor them into the box model
//! of the two gradings, then express the result in the canonical model of
//! the target grading through a chain of comparison maps. Every comparison
//! map is a genuine map of chain complexes of Mackey functors, normalized
//! to act by +1 on the bottom-level fundamental class; that pins its
//! homotopy class, so products are associative and independent of the
//! reduction route.
//!
//! The comparison maps are:
//!   - swaps of adjacent box factors (Koszul signs),
//!   - merges rho : C(a+b) -> C(a) [x] C(b) of positive flag models,
//!     constructed once per pair by solving the chain-map equations over Z,
//!   - their duals sigma : D(a) [x] D(b) -> D(a+b) (transposes of rho),
//!   - the duality pairing ev : C(r) [x] D(r) -> Z in degree zero.
//!
//! Division is the paper's notion: y/x is defined when a unique cyclic
//! subgroup of H_{deg y - deg x}(S^{grading y - grading x}) is mapped
//! isomorphically onto <y> by multiplication by x.

use crate::chains::{positive_flag, Factor, Model, ModelKey};
use crate::group::{Group, Level, VirtualRep};
use crate::homology::{level_diff, presentation, Presentation};
use crate::zlinalg::{solve, HomologyGroup, IntMat, Solver};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// An element of the RO(G)-graded homology: coordinates in the generator
/// basis of H_degree(S^grading) at a subgroup level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub grading: VirtualRep,
    pub degree: i64,
    pub level: u32,
    pub coords: Vec<BigInt>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// rho : C(a+b) -> C(a) [x] C(b) stored as one bottom matrix per degree.
struct MergeCore {
    mats: BTreeMap<i64, IntMat>,
}

/// The computation engine: caches chain models, their homology, and the
/// comparison maps.
pub struct Engine {
    pub group: Group,
    pub modulus: u32,
    models: HashMap<ModelKey, Rc<Model>>,
    pres: HashMap<(ModelKey, i64), Rc<Presentation>>,
    level_homs: HashMap<(ModelKey, i64, u32), Rc<HomologyGroup>>,
    merges: HashMap<(VirtualRep, VirtualRep), Rc<MergeCore>>,
    ev_signs_cache: HashMap<VirtualRep, Rc<BTreeMap<i64, BigInt>>>,
    /// per model: bottom fundamental cycle and a functional evaluating to 1
    /// on it, at the dimension degree of the model's grading
    funds: HashMap<ModelKey, Rc<(Vec<BigInt>, Vec<BigInt>)>>,
    /// per factor: fundamental cycle of the factor complex at its own top
    factor_funds: HashMap<Factor, Rc<Vec<BigInt>>>,
    /// cached degrees of comparison-map uses between model pairs
    step_degs: HashMap<(ModelKey, ModelKey), i64>,
    /// cached homology solvers for backward comparison steps
    backward: HashMap<(ModelKey, ModelKey, i64, u32), Rc<BackwardMap>>,
}

/// The induced map of a backward comparison step on one homology slot,
/// prepared for repeated solving.
struct BackwardMap {
    solver: Solver,
    n_unknowns: usize,
}

impl Engine {
    pub fn new(group: Group, modulus: u32) -> Engine {
        Engine {
            group,
            modulus,
            models: HashMap::new(),
            pres: HashMap::new(),
            level_homs: HashMap::new(),
            merges: HashMap::new(),
            ev_signs_cache: HashMap::new(),
            funds: HashMap::new(),
            factor_funds: HashMap::new(),
            step_degs: HashMap::new(),
            backward: HashMap::new(),
        }
    }

    pub fn c4() -> Engine {
        Engine::new(Group::c4(), 0)
    }

    pub fn model(&mut self, key: &ModelKey) -> Rc<Model> {
        if let Some(m) = self.models.get(key) {
            return m.clone();
        }
        let m = Rc::new(Model::build(self.group, key.clone()));
        self.models.insert(key.clone(), m.clone());
        m
    }

    pub fn canonical_model(&mut self, v: &VirtualRep) -> Rc<Model> {
        self.model(&Model::canonical_key(v))
    }

    /// Full homology Mackey functor of S^v in one degree.
    pub fn homology(&mut self, v: &VirtualRep, degree: i64) -> Rc<Presentation> {
        let key = Model::canonical_key(v);
        self.presentation_of(&key, degree)
    }

    fn presentation_of(&mut self, key: &ModelKey, degree: i64) -> Rc<Presentation> {
        if let Some(p) = self.pres.get(&(key.clone(), degree)) {
            return p.clone();
        }
        let model = self.model(key);
        let p = Rc::new(presentation(model.complex(), degree, self.modulus));
        self.pres.insert((key.clone(), degree), p.clone());
        p
    }

    /// Homology of one level of one degree of a model (cheaper than the full
    /// presentation; used while reducing through comparison maps).
    fn level_homology(&mut self, key: &ModelKey, degree: i64, level: u32) -> Rc<HomologyGroup> {
        let k = (key.clone(), degree, level);
        if let Some(h) = self.level_homs.get(&k) {
            return h.clone();
        }
        let model = self.model(key);
        let cx = model.complex();
        let d_out = level_diff(cx, degree, Level(level));
        let d_in = level_diff(cx, degree + 1, Level(level));
        let h = Rc::new(HomologyGroup::new(&d_in, &d_out, self.modulus));
        self.level_homs.insert(k, h.clone());
        h
    }

    /// Chain representative of an element at its own level, as a bottom
    /// vector of its canonical model.
    pub fn bottom_chain(&mut self, e: &Element) -> Vec<BigInt> {
        let key = Model::canonical_key(&e.grading);
        let model = self.model(&key);
        let p = self.presentation_of(&key, e.degree);
        let chain = p.levels[e.level as usize].chain_of(&e.coords);
        match model.complex().module(e.degree) {
            Some(m) => m.inclusion(Level(e.level)).apply(&chain),
            None => vec![],
        }
    }

    // ------------------------------------------------------------------
    // comparison maps
    // ------------------------------------------------------------------

    /// The merge core rho : C(a+b) -> C(a) [x] C(b), solved once and cached.
    /// All chain-map equations plus the condition that the bottom-level
    /// fundamental class maps by +1 form one integer linear system.
    fn merge_core(&mut self, a: &VirtualRep, b: &VirtualRep) -> Rc<MergeCore> {
        let mkey = (a.clone(), b.clone());
        if let Some(c) = self.merges.get(&mkey) {
            return c.clone();
        }
        let n_cx = positive_flag(self.group, &(a + b));
        let m_model = self.model(&ModelKey {
            factors: vec![Factor::Pos(a.clone()), Factor::Pos(b.clone())],
            shift: 0,
        });
        let m_cx = m_model.complex();
        let top = n_cx.hi();

        // unknowns: coordinates x_k of rho(generator of N_k) in the fixed
        // part of M_k at the stabilizer of the N_k cell; x_0 is the unit
        let mut col_offsets = Vec::with_capacity(top as usize);
        let mut total_cols = 0usize;
        let mut incs: Vec<IntMat> = Vec::new();
        for k in 1..=top {
            let stab = n_cx.module(k).unwrap().basis[0].stab;
            let inc = m_cx.module(k).unwrap().inclusion(stab);
            col_offsets.push(total_cols);
            total_cols += inc.cols();
            incs.push(inc);
        }

        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut rhs: Vec<BigInt> = Vec::new();
        for k in 1..=top {
            let d_m = m_cx.diff(k);
            let d_n = n_cx.diff(k);
            let m_rank = m_cx.bottom_rank(k - 1);
            let a_blk = d_m.mul(&incs[(k - 1) as usize]);
            if k == 1 {
                let m0 = m_cx.module(0).unwrap();
                assert_eq!(m0.bottom_rank(), 1);
                let c = d_n.col_vec(0);
                let total: BigInt = c.iter().sum();
                for r in 0..m_rank {
                    let mut row = vec![BigInt::zero(); total_cols];
                    for j in 0..a_blk.cols() {
                        row[col_offsets[0] + j] = a_blk.get(r, j).clone();
                    }
                    rows.push(row);
                    rhs.push(if r == 0 { total.clone() } else { BigInt::zero() });
                }
            } else {
                let m_prev = m_cx.module(k - 1).unwrap();
                let inc_prev = &incs[(k - 2) as usize];
                let c = d_n.col_vec(0);
                // B = (sum_t c_t T^t) applied to inc_prev columns
                let mut b_blk = IntMat::zeros(m_prev.bottom_rank(), inc_prev.cols());
                for j in 0..inc_prev.cols() {
                    let base = inc_prev.col_vec(j);
                    for (t, ct) in c.iter().enumerate() {
                        if ct.is_zero() {
                            continue;
                        }
                        for (i, vi) in base.iter().enumerate() {
                            if !vi.is_zero() {
                                let dst = m_prev.translate_bottom(i, t as u64);
                                b_blk.add_assign_at(dst, j, &(ct * vi));
                            }
                        }
                    }
                }
                for r in 0..m_rank {
                    let mut row = vec![BigInt::zero(); total_cols];
                    for j in 0..a_blk.cols() {
                        row[col_offsets[(k - 1) as usize] + j] = a_blk.get(r, j).clone();
                    }
                    for j in 0..b_blk.cols() {
                        let v = row[col_offsets[(k - 2) as usize] + j].clone() - b_blk.get(r, j);
                        row[col_offsets[(k - 2) as usize] + j] = v;
                    }
                    rows.push(row);
                    rhs.push(BigInt::zero());
                }
            }
        }
        // normalization: the fundamental cycle of N_top at the bottom maps
        // to +1 times the fundamental class of M_top. The coefficient of a
        // cycle z against the fundamental cycle zeta_M is <w, z> for any
        // integer functional w with <w, zeta_M> = 1 (zeta_M is primitive).
        {
            let h_n = HomologyGroup::new(&n_cx.diff(top + 1), &n_cx.diff(top), 0);
            assert_eq!(h_n.free_rank, 1);
            let zeta_n = h_n.gen_chain(0);
            let h_m = HomologyGroup::new(&m_cx.diff(top + 1), &m_cx.diff(top), 0);
            assert_eq!(h_m.free_rank, 1);
            let zeta_m = h_m.gen_chain(0);
            let w = solve(
                &IntMat::from_cols(&zeta_m.iter().map(|z| vec![z.clone()]).collect::<Vec<_>>(), 1),
                &[BigInt::one()],
            )
            .expect("fundamental cycle is primitive");
            let m_top = m_cx.module(top).unwrap();
            let inc = &incs[(top - 1) as usize];
            let mut row = vec![BigInt::zero(); total_cols];
            for j in 0..inc.cols() {
                let base = inc.col_vec(j);
                let mut img = vec![BigInt::zero(); m_top.bottom_rank()];
                for (t, zt) in zeta_n.iter().enumerate() {
                    if zt.is_zero() {
                        continue;
                    }
                    for (i, vi) in base.iter().enumerate() {
                        if !vi.is_zero() {
                            img[m_top.translate_bottom(i, t as u64)] += zt * vi;
                        }
                    }
                }
                let coeff: BigInt = w.iter().zip(&img).map(|(a, b)| a * b).sum();
                row[col_offsets[(top - 1) as usize] + j] = coeff;
            }
            rows.push(row);
            rhs.push(BigInt::one());
        }

        let system = IntMat::from_cols(
            &(0..total_cols)
                .map(|j| rows.iter().map(|r| r[j].clone()).collect())
                .collect::<Vec<_>>(),
            rows.len(),
        );
        let x = solve(&system, &rhs)
            .unwrap_or_else(|| panic!("no chain-level merge map for {} and {}", a, b));

        let mut mats = BTreeMap::new();
        mats.insert(0i64, IntMat::from_rows(&[vec![1]]));
        for k in 1..=top {
            let n_mod = n_cx.module(k).unwrap();
            let r = n_mod.bottom_rank();
            let inc = &incs[(k - 1) as usize];
            let m_mod = m_cx.module(k).unwrap();
            let xk: Vec<BigInt> = (0..inc.cols())
                .map(|j| x[col_offsets[(k - 1) as usize] + j].clone())
                .collect();
            let gen_img = inc.apply(&xk);
            let mut mat = IntMat::zeros(m_mod.bottom_rank(), r);
            for t in 0..r {
                for (i, vi) in gen_img.iter().enumerate() {
                    if !vi.is_zero() {
                        mat.add_assign_at(m_mod.translate_bottom(i, t as u64), t, vi);
                    }
                }
            }
            mats.insert(k, mat);
        }

        let core = MergeCore { mats };
        for k in 1..=top {
            let lhs = m_cx.diff(k).mul(&core.mats[&k]);
            let rhs_m = core.mats[&(k - 1)].mul(&n_cx.diff(k));
            assert_eq!(lhs, rhs_m, "merge map is not a chain map at degree {}", k);
        }

        let rc = Rc::new(core);
        self.merges.insert(mkey, rc.clone());
        rc
    }

    /// Signs of the duality pairing ev : C(r) [x] D(r) -> Z per block degree,
    /// normalized so the degree-zero fundamental class maps to +1.
    fn ev_signs(&mut self, r: &VirtualRep) -> Rc<BTreeMap<i64, BigInt>> {
        if let Some(s) = self.ev_signs_cache.get(r) {
            return s.clone();
        }
        let dim = r.dim();
        let mut signs = BTreeMap::new();
        let mut eps = BigInt::one();
        signs.insert(0i64, eps.clone());
        for k in 1..=dim {
            // chain map condition: eps_k = (-1)^{k+1} eps_{k-1}
            if k % 2 == 0 {
                eps = -eps;
            }
            signs.insert(k, eps.clone());
        }
        let key = ModelKey {
            factors: vec![Factor::Pos(r.clone()), Factor::Dual(r.clone())],
            shift: 0,
        };
        let model = self.model(&key);
        let h0 = self.level_homology(&key, 0, 0);
        assert_eq!(h0.free_rank, 1, "smash inverse H_0 should be Z at the bottom");
        let zeta = h0.gen_chain(0);
        let mut total = BigInt::zero();
        for (idx, c) in zeta.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (fdegs, tuple) = model.tuple_at(0, idx);
            if tuple[0] == tuple[1] {
                total += c * &signs[&fdegs[0]];
            }
        }
        assert!(
            total.abs().is_one(),
            "duality pairing misses the fundamental class (got {})",
            total
        );
        if total.is_negative() {
            for v in signs.values_mut() {
                let t = std::mem::take(v);
                *v = -t;
            }
        }
        let rc = Rc::new(signs);
        self.ev_signs_cache.insert(r.clone(), rc.clone());
        rc
    }

    // ------------------------------------------------------------------
    // reduction to the canonical model
    // ------------------------------------------------------------------

    /// Fundamental cycle of a single factor complex at its own top degree.
    fn factor_fundamental(&mut self, f: &Factor) -> Rc<Vec<BigInt>> {
        if let Some(z) = self.factor_funds.get(f) {
            return z.clone();
        }
        let cx = f.complex(self.group);
        let top = match f {
            Factor::Pos(v) => v.dim(),
            Factor::Dual(v) => -v.dim(),
        };
        let h = HomologyGroup::new(&cx.diff(top + 1), &cx.diff(top), 0);
        assert_eq!((h.free_rank, h.torsion.len()), (1, 0));
        let rc = Rc::new(h.gen_chain(0));
        self.factor_funds.insert(f.clone(), rc.clone());
        rc
    }

    /// Bottom fundamental cycle of a model at the dimension degree of its
    /// grading, together with an integer functional evaluating to 1 on it
    /// and vanishing on boundaries. The cycle is the tensor product of the
    /// factor fundamentals, so the choices are coherent across all the box
    /// models of one grading; comparison maps normalized against these
    /// transport one fixed orientation, which makes products independent of
    /// the reduction route.
    fn fundamental(&mut self, key: &ModelKey) -> Rc<(Vec<BigInt>, Vec<BigInt>)> {
        if let Some(f) = self.funds.get(key) {
            return f.clone();
        }
        let dim = Self::grading_of(key).dim();
        let model = self.model(key);
        let zeta = if key.factors.is_empty() {
            vec![BigInt::one()]
        } else {
            let parts: Vec<Rc<Vec<BigInt>>> =
                key.factors.iter().map(|f| self.factor_fundamental(f)).collect();
            let tops: Vec<i64> = key
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Pos(v) => v.dim(),
                    Factor::Dual(v) => -v.dim(),
                })
                .collect();
            let mut out = vec![BigInt::zero(); model.complex().bottom_rank(dim)];
            // iterate over all tuples of nonzero coordinates
            let mut stack: Vec<(Vec<usize>, BigInt)> = vec![(vec![], BigInt::one())];
            for part in &parts {
                let mut next = Vec::new();
                for (prefix, coeff) in &stack {
                    for (i, c) in part.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut p = prefix.clone();
                        p.push(i);
                        next.push((p, coeff * c));
                    }
                }
                stack = next;
            }
            for (tuple, coeff) in stack {
                let idx = model.bottom_index(dim, &tops, &tuple);
                out[idx] += coeff;
            }
            out
        };
        // sanity: zeta is a nonzero cycle generating H_dim at the bottom
        {
            let h = self.level_homology(key, dim, 0);
            let coords = h
                .express(&zeta)
                .expect("tensor fundamental is not a cycle");
            assert!(
                coords.len() == 1 && coords[0].abs().is_one(),
                "tensor fundamental does not generate H_dim"
            );
        }
        // functional with <w, zeta> = 1 vanishing on boundaries, so that
        // <w, z> is the class coefficient of any cycle z
        let boundaries = model.complex().diff(dim + 1);
        let n = zeta.len();
        let mut rows: Vec<Vec<BigInt>> = vec![zeta.clone()];
        for j in 0..boundaries.cols() {
            rows.push(boundaries.col_vec(j));
        }
        let system = IntMat::from_fn(rows.len(), n, |i, j| rows[i][j].clone());
        let mut rhs = vec![BigInt::zero(); rows.len()];
        rhs[0] = BigInt::one();
        let w = solve(&system, &rhs)
            .expect("no integral functional detecting the fundamental class");
        let rc = Rc::new((zeta, w));
        self.funds.insert(key.clone(), rc.clone());
        rc
    }

    /// Degree (+1 or -1) of a comparison-map use between two models, with
    /// respect to their fixed fundamental classes. Pinning every use to +1
    /// makes all reduction routes act identically on homology. The push
    /// closure takes the chain degree it acts in.
    fn step_degree(
        &mut self,
        src: &ModelKey,
        dst: &ModelKey,
        push: &dyn Fn(i64, &[BigInt]) -> Vec<BigInt>,
    ) -> i64 {
        let k = (src.clone(), dst.clone());
        if let Some(&d) = self.step_degs.get(&k) {
            return d;
        }
        let dim = Self::grading_of(src).dim();
        let fs = self.fundamental(src);
        let fd = self.fundamental(dst);
        let img = push(dim, &fs.0);
        let deg: BigInt = fd.1.iter().zip(&img).map(|(a, b)| a * b).sum();
        use num_traits::ToPrimitive;
        let d = deg.to_i64().expect("step degree overflow");
        assert!(
            d == 1 || d == -1,
            "comparison map between {:?} and {:?} has degree {}",
            src,
            dst,
            d
        );
        self.step_degs.insert(k, d);
        d
    }

    /// Apply a forward move normalized to +1 on the fundamental classes.
    fn apply_forward(
        &mut self,
        src: &ModelKey,
        dst: &ModelKey,
        deg: i64,
        vec: &[BigInt],
        push: impl Fn(i64, &[BigInt]) -> Vec<BigInt>,
    ) -> Vec<BigInt> {
        let d = self.step_degree(src, dst, &push);
        let mut out = push(deg, vec);
        if d < 0 {
            for v in &mut out {
                let t = std::mem::take(v);
                *v = -t;
            }
        }
        out
    }

    fn grading_of(key: &ModelKey) -> VirtualRep {
        let mut v = VirtualRep::trivial(key.shift);
        for f in &key.factors {
            match f {
                Factor::Pos(r) => v = &v + r,
                Factor::Dual(r) => v = &v - r,
            }
        }
        v
    }

    /// Push a bottom vector through the factor-local extension of a core
    /// map replacing the `src_arity` factors at `pos`.
    fn push_blockwise(
        src: &Model,
        dst: &Model,
        deg: i64,
        vec: &[BigInt],
        pos: usize,
        src_arity: usize,
        mut image: impl FnMut(&[i64], &[usize]) -> Vec<(Vec<i64>, Vec<usize>, BigInt)>,
    ) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); dst.complex().bottom_rank(deg)];
        for (idx, c) in vec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (fdegs, tuple) = src.tuple_at(deg, idx);
            let inner_degs: Vec<i64> = fdegs[pos..pos + src_arity].to_vec();
            let inner_idx: Vec<usize> = tuple[pos..pos + src_arity].to_vec();
            for (rep_degs, rep_idx, coeff) in image(&inner_degs, &inner_idx) {
                let mut tgt_fdegs: Vec<i64> = Vec::with_capacity(fdegs.len());
                tgt_fdegs.extend_from_slice(&fdegs[..pos]);
                tgt_fdegs.extend_from_slice(&rep_degs);
                tgt_fdegs.extend_from_slice(&fdegs[pos + src_arity..]);
                let mut tgt_tuple: Vec<usize> = Vec::with_capacity(tuple.len());
                tgt_tuple.extend_from_slice(&tuple[..pos]);
                tgt_tuple.extend_from_slice(&rep_idx);
                tgt_tuple.extend_from_slice(&tuple[pos + src_arity..]);
                let tgt = dst.bottom_index(deg, &tgt_fdegs, &tgt_tuple);
                out[tgt] += c * coeff;
            }
        }
        out
    }

    /// One consolidation move (sorting and merging); None when the list is
    /// down to at most one positive and one dual factor, in that order.
    fn consolidate_step(
        &mut self,
        key: &ModelKey,
        deg: i64,
        level: u32,
        chain_bottom: Vec<BigInt>,
    ) -> Option<(ModelKey, Vec<BigInt>)> {
        let factors = &key.factors;
        // 1. swap a Dual standing before a Pos
        for i in 0..factors.len().saturating_sub(1) {
            if matches!(factors[i], Factor::Dual(_)) && matches!(factors[i + 1], Factor::Pos(_)) {
                let mut nf = factors.clone();
                nf.swap(i, i + 1);
                let nkey = ModelKey { factors: nf, shift: key.shift };
                let src = self.model(key);
                let dst = self.model(&nkey);
                let push = move |d: i64, v: &[BigInt]| -> Vec<BigInt> {
                    Self::push_blockwise(&src, &dst, d, v, i, 2, |degs, idx| {
                        let sign = if (degs[0] * degs[1]) % 2 == 0 {
                            BigInt::one()
                        } else {
                            BigInt::from(-1)
                        };
                        vec![(vec![degs[1], degs[0]], vec![idx[1], idx[0]], sign)]
                    })
                };
                let out = self.apply_forward(key, &nkey, deg, &chain_bottom, push);
                return Some((nkey, out));
            }
        }
        // 2. merge two adjacent Pos factors (backward through rho)
        for i in 0..factors.len().saturating_sub(1) {
            if let (Factor::Pos(a), Factor::Pos(b)) = (&factors[i], &factors[i + 1]) {
                let (a, b) = (a.clone(), b.clone());
                let merged = &a + &b;
                let mut nf = factors.clone();
                nf.splice(i..i + 2, [Factor::Pos(merged)]);
                let nkey = ModelKey { factors: nf, shift: key.shift };
                let out =
                    self.solve_through_merge(&nkey, key, i, &a, &b, deg, level, &chain_bottom);
                return Some((nkey, out));
            }
        }
        // 3. merge two adjacent Dual factors (forward through sigma = rho^T)
        for i in 0..factors.len().saturating_sub(1) {
            if let (Factor::Dual(a), Factor::Dual(b)) = (&factors[i], &factors[i + 1]) {
                let (a, b) = (a.clone(), b.clone());
                let merged = &a + &b;
                let mut nf = factors.clone();
                nf.splice(i..i + 2, [Factor::Dual(merged)]);
                let nkey = ModelKey { factors: nf, shift: key.shift };
                let core = self.merge_core(&a, &b);
                let m2key = ModelKey {
                    factors: vec![Factor::Pos(a.clone()), Factor::Pos(b.clone())],
                    shift: 0,
                };
                let m2 = self.model(&m2key);
                let src = self.model(key);
                let dst = self.model(&nkey);
                let push = move |d: i64, v: &[BigInt]| -> Vec<BigInt> {
                    Self::push_blockwise(&src, &dst, d, v, i, 2, |degs, idx| {
                        let k = -(degs[0] + degs[1]);
                        let rho_k = &core.mats[&k];
                        let pda = -degs[0];
                        let row = m2.bottom_index(k, &[pda, k - pda], &[idx[0], idx[1]]);
                        let mut res = Vec::new();
                        for t in 0..rho_k.cols() {
                            let v = rho_k.get(row, t);
                            if !v.is_zero() {
                                res.push((vec![-k], vec![t], v.clone()));
                            }
                        }
                        res
                    })
                };
                let out = self.apply_forward(key, &nkey, deg, &chain_bottom, push);
                return Some((nkey, out));
            }
        }
        None
    }

    /// Split the positive factor at `pos`: Pos(p_rest + r) becomes
    /// Pos(p_rest), Pos(r), pushing forward through rho.
    fn split_pos_at(
        &mut self,
        key: &ModelKey,
        pos: usize,
        p_rest: &VirtualRep,
        r: &VirtualRep,
        deg: i64,
        chain_bottom: &[BigInt],
    ) -> (ModelKey, Vec<BigInt>) {
        let core = self.merge_core(p_rest, r);
        let mut nf = key.factors.clone();
        nf.splice(pos..pos + 1, [Factor::Pos(p_rest.clone()), Factor::Pos(r.clone())]);
        let nkey = ModelKey { factors: nf, shift: key.shift };
        let m2key = ModelKey {
            factors: vec![Factor::Pos(p_rest.clone()), Factor::Pos(r.clone())],
            shift: 0,
        };
        let m2 = self.model(&m2key);
        let src = self.model(key);
        let dst = self.model(&nkey);
        let push = move |d: i64, v: &[BigInt]| -> Vec<BigInt> {
            Self::push_blockwise(&src, &dst, d, v, pos, 1, |degs, idx| {
                let k = degs[0];
                let rho_k = &core.mats[&k];
                let mut res = Vec::new();
                for row in 0..rho_k.rows() {
                    let val = rho_k.get(row, idx[0]);
                    if val.is_zero() {
                        continue;
                    }
                    let (fd, tp) = m2.tuple_at(k, row);
                    res.push((fd.to_vec(), tp.to_vec(), val.clone()));
                }
                res
            })
        };
        let out = self.apply_forward(key, &nkey, deg, chain_bottom, push);
        (nkey, out)
    }

    /// Split the dual factor at `pos`: Dual(r + q_rest) becomes Dual(r),
    /// Dual(q_rest), solving backward through sigma.
    fn split_dual_at(
        &mut self,
        key: &ModelKey,
        pos: usize,
        r: &VirtualRep,
        q_rest: &VirtualRep,
        deg: i64,
        level: u32,
        chain_bottom: &[BigInt],
    ) -> (ModelKey, Vec<BigInt>) {
        let mut nf = key.factors.clone();
        nf.splice(pos..pos + 1, [Factor::Dual(r.clone()), Factor::Dual(q_rest.clone())]);
        let nkey = ModelKey { factors: nf, shift: key.shift };
        let out =
            self.solve_through_dual_split(&nkey, key, pos, r, q_rest, deg, level, chain_bottom);
        (nkey, out)
    }

    /// Cancel the adjacent pair Pos(r), Dual(r) at `pos` with the duality
    /// pairing.
    fn cancel_at(
        &mut self,
        key: &ModelKey,
        pos: usize,
        r: &VirtualRep,
        deg: i64,
        chain_bottom: &[BigInt],
    ) -> (ModelKey, Vec<BigInt>) {
        let signs = self.ev_signs(r);
        let mut nf = key.factors.clone();
        nf.splice(pos..pos + 2, []);
        let nkey = ModelKey { factors: nf, shift: key.shift };
        let src = self.model(key);
        let dst = self.model(&nkey);
        let push = move |d: i64, v: &[BigInt]| -> Vec<BigInt> {
            Self::push_blockwise(&src, &dst, d, v, pos, 2, |degs, idx| {
                if degs[0] + degs[1] == 0 && idx[0] == idx[1] {
                    vec![(vec![], vec![], signs[&degs[0]].clone())]
                } else {
                    vec![]
                }
            })
        };
        let out = self.apply_forward(key, &nkey, deg, chain_bottom, push);
        (nkey, out)
    }

    /// Backward step through the extension of rho placed at `pos`.
    #[allow(clippy::too_many_arguments)]
    fn solve_through_merge(
        &mut self,
        nkey: &ModelKey,
        key: &ModelKey,
        pos: usize,
        a: &VirtualRep,
        b: &VirtualRep,
        deg: i64,
        level: u32,
        chain_bottom: &[BigInt],
    ) -> Vec<BigInt> {
        let core = self.merge_core(a, b);
        let m2key =
            ModelKey { factors: vec![Factor::Pos(a.clone()), Factor::Pos(b.clone())], shift: 0 };
        let m2 = self.model(&m2key);
        let src = self.model(nkey);
        let dst = self.model(key);
        let push = |d: i64, v: &[BigInt]| -> Vec<BigInt> {
            Self::push_blockwise(&src, &dst, d, v, pos, 1, |degs, idx| {
                let k = degs[0];
                let rho_k = &core.mats[&k];
                let mut res = Vec::new();
                for r in 0..rho_k.rows() {
                    let val = rho_k.get(r, idx[0]);
                    if val.is_zero() {
                        continue;
                    }
                    let (fd, tp) = m2.tuple_at(k, r);
                    res.push((fd.to_vec(), tp.to_vec(), val.clone()));
                }
                res
            })
        };
        self.solve_backward(nkey, key, deg, level, chain_bottom, push)
    }

    /// Backward step through the extension of sigma used as a dual split.
    #[allow(clippy::too_many_arguments)]
    fn solve_through_dual_split(
        &mut self,
        nkey: &ModelKey,
        key: &ModelKey,
        pos: usize,
        a: &VirtualRep,
        b: &VirtualRep,
        deg: i64,
        level: u32,
        chain_bottom: &[BigInt],
    ) -> Vec<BigInt> {
        let core = self.merge_core(a, b);
        let m2key =
            ModelKey { factors: vec![Factor::Pos(a.clone()), Factor::Pos(b.clone())], shift: 0 };
        let m2 = self.model(&m2key);
        let src = self.model(nkey);
        let dst = self.model(key);
        let push = |d: i64, v: &[BigInt]| -> Vec<BigInt> {
            Self::push_blockwise(&src, &dst, d, v, pos, 2, |degs, idx| {
                let k = -(degs[0] + degs[1]);
                let rho_k = &core.mats[&k];
                let pda = -degs[0];
                let row = m2.bottom_index(k, &[pda, k - pda], &[idx[0], idx[1]]);
                let mut res = Vec::new();
                for t in 0..rho_k.cols() {
                    let val = rho_k.get(row, t);
                    if !val.is_zero() {
                        res.push((vec![-k], vec![t], val.clone()));
                    }
                }
                res
            })
        };
        self.solve_backward(nkey, key, deg, level, chain_bottom, push)
    }

    /// Given a forward chain map `push` from model `nkey` to model `key` and
    /// a class in `key`, find the class of `nkey` mapping to it under the
    /// +1-normalized map.
    fn solve_backward(
        &mut self,
        nkey: &ModelKey,
        key: &ModelKey,
        deg: i64,
        level: u32,
        chain_bottom: &[BigInt],
        push: impl Fn(i64, &[BigInt]) -> Vec<BigInt>,
    ) -> Vec<BigInt> {
        let step = self.step_degree(nkey, key, &push);
        let h_src = self.level_homology(nkey, deg, level);
        let h_dst = self.level_homology(key, deg, level);
        let src_model = self.model(nkey);
        let dst_model = self.model(key);
        let src_inc = src_model
            .complex()
            .module(deg)
            .map(|m| m.inclusion(Level(level)))
            .unwrap_or_else(|| IntMat::zeros(0, 0));
        let dst_mod = dst_model.complex().module(deg);

        let bkey = (nkey.clone(), key.clone(), deg, level);
        let bmap = match self.backward.get(&bkey) {
            Some(b) => b.clone(),
            None => {
                let mut cols = Vec::new();
                for i in 0..h_src.rank() {
                    let chain = h_src.gen_chain(i);
                    let bottom = src_inc.apply(&chain);
                    let img = push(deg, &bottom);
                    let lvl = dst_mod
                        .map(|m| {
                            m.express_level(Level(level), &img).expect("image not fixed")
                        })
                        .unwrap_or_default();
                    cols.push(h_dst.express(&lvl).expect("image of a cycle is not a cycle"));
                }
                let n_unknowns = cols.len();
                for j in 0..h_dst.rank() {
                    if !h_dst.order(j).is_zero() {
                        let mut c = vec![BigInt::zero(); h_dst.rank()];
                        c[j] = h_dst.order(j).clone();
                        cols.push(c);
                    }
                }
                let mat = IntMat::from_cols(&cols, h_dst.rank());
                let b = Rc::new(BackwardMap { solver: Solver::new(&mat), n_unknowns });
                self.backward.insert(bkey, b.clone());
                b
            }
        };

        let tgt_lvl = dst_mod
            .map(|m| {
                m.express_level(Level(level), chain_bottom).expect("class not fixed")
            })
            .unwrap_or_default();
        let target = h_dst.express(&tgt_lvl).expect("class is not a cycle");
        let sol = bmap
            .solver
            .solve(&target)
            .expect("comparison map is not surjective on homology");
        let x = h_src.reduce(&sol[..bmap.n_unknowns].to_vec());
        // solving through F when the normalized map is step * F
        let x: Vec<BigInt> = x.iter().map(|v| v * step).collect();
        let chain = h_src.chain_of(&x);
        src_inc.apply(&chain)
    }

    /// Express a class (bottom chain at a level) of an arbitrary model in
    /// the canonical model of its grading; returns homology coordinates.
    pub fn reduce_to_canonical(
        &mut self,
        key: &ModelKey,
        deg: i64,
        level: u32,
        mut chain_bottom: Vec<BigInt>,
    ) -> Element {
        let grading = Self::grading_of(key);
        let target_key = Model::canonical_key(&grading);
        let mut cur = key.clone();
        // phase 1: sort and merge down to [Pos(P)?, Dual(Q)?]
        while let Some((nk, nc)) = self.consolidate_step(&cur, deg, level, chain_bottom.clone()) {
            cur = nk;
            chain_bottom = nc;
        }
        // phase 2: cancel the common part of P and Q
        if cur != target_key {
            let p = cur
                .factors
                .iter()
                .find_map(|f| match f {
                    Factor::Pos(v) => Some(v.clone()),
                    _ => None,
                })
                .unwrap_or_else(VirtualRep::zero);
            let q = cur
                .factors
                .iter()
                .find_map(|f| match f {
                    Factor::Dual(v) => Some(v.clone()),
                    _ => None,
                })
                .unwrap_or_else(VirtualRep::zero);
            let overlap = overlap_of(&p, &q);
            assert!(
                !overlap.is_zero(),
                "non-canonical reduced key without overlap: {:?}",
                cur
            );
            let p_rest = (&p - &overlap).normalized();
            let q_rest = (&q - &overlap).normalized();
            if !p_rest.is_zero() {
                let (nk, nc) = self.split_pos_at(&cur, 0, &p_rest, &overlap, deg, &chain_bottom);
                cur = nk;
                chain_bottom = nc;
            }
            let dpos = cur.factors.len() - 1; // the single dual factor
            if !q_rest.is_zero() {
                let (nk, nc) =
                    self.split_dual_at(&cur, dpos, &overlap, &q_rest, deg, level, &chain_bottom);
                cur = nk;
                chain_bottom = nc;
            }
            // the Pos(overlap), Dual(overlap) pair now sits just before the
            // first dual factor
            let dpos = cur
                .factors
                .iter()
                .position(|f| matches!(f, Factor::Dual(_)))
                .expect("dual factor missing");
            assert!(dpos >= 1 && matches!(&cur.factors[dpos - 1], Factor::Pos(v) if *v == overlap));
            let cpos = dpos - 1;
            let (nk, nc) = self.cancel_at(&cur, cpos, &overlap, deg, &chain_bottom);
            cur = nk;
            chain_bottom = nc;
        }
        assert_eq!(cur, target_key, "reduction did not reach the canonical model");
        let p = self.presentation_of(&target_key, deg);
        let model = self.model(&target_key);
        let coords = match model.complex().module(deg) {
            Some(m) => {
                let lvl = m
                    .express_level(Level(level), &chain_bottom)
                    .expect("reduced class is not fixed");
                p.levels[level as usize].express(&lvl).expect("reduced class is not a cycle")
            }
            None => vec![],
        };
        Element { grading, degree: deg, level, coords }
    }

    // ------------------------------------------------------------------
    // products, divisions, units
    // ------------------------------------------------------------------

    /// The multiplicative unit at a level: 1 in H_0(S^0).
    pub fn unit(&mut self, level: u32) -> Element {
        let v = VirtualRep::zero();
        let p = self.homology(&v, 0);
        assert_eq!(p.levels[level as usize].rank(), 1);
        Element { grading: v, degree: 0, level, coords: vec![BigInt::one()] }
    }

    /// Product of two elements at the same level.
    pub fn multiply(&mut self, x: &Element, y: &Element) -> Element {
        assert_eq!(x.level, y.level, "restrict to a common level before multiplying");
        let kx = Model::canonical_key(&x.grading);
        let ky = Model::canonical_key(&y.grading);
        let mx = self.model(&kx);
        let my = self.model(&ky);
        let bx = self.bottom_chain(x);
        let by = self.bottom_chain(y);
        let mut factors = kx.factors.clone();
        factors.extend(ky.factors.iter().cloned());
        let key = ModelKey { factors, shift: kx.shift + ky.shift };
        let mxy = self.model(&key);
        let z = crate::chains::tensor_elements(&mx, x.degree, &bx, &my, y.degree, &by, &mxy);
        self.reduce_to_canonical(&key, x.degree + y.degree, x.level, z)
    }

    /// Scalar multiple.
    pub fn scale(&mut self, c: i64, x: &Element) -> Element {
        let p = self.homology(&x.grading.clone(), x.degree);
        let coords: Vec<BigInt> = x.coords.iter().map(|v| v * c).collect();
        Element {
            grading: x.grading.clone(),
            degree: x.degree,
            level: x.level,
            coords: p.levels[x.level as usize].reduce(&coords),
        }
    }

    pub fn add(&mut self, x: &Element, y: &Element) -> Element {
        assert_eq!((&x.grading, x.degree, x.level), (&y.grading, y.degree, y.level));
        let p = self.homology(&x.grading.clone(), x.degree);
        let coords: Vec<BigInt> = x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect();
        Element {
            grading: x.grading.clone(),
            degree: x.degree,
            level: x.level,
            coords: p.levels[x.level as usize].reduce(&coords),
        }
    }

    /// Restriction to a lower level.
    pub fn res(&mut self, x: &Element, to: u32) -> Element {
        let p = self.homology(&x.grading.clone(), x.degree);
        let coords = p.restrict_coords(x.level, to, &x.coords);
        Element { grading: x.grading.clone(), degree: x.degree, level: to, coords }
    }

    /// Transfer to a higher level.
    pub fn tr(&mut self, x: &Element, to: u32) -> Element {
        let p = self.homology(&x.grading.clone(), x.degree);
        let coords = p.transfer_coords(x.level, to, &x.coords);
        Element { grading: x.grading.clone(), degree: x.degree, level: to, coords }
    }

    /// The Weyl action of the chosen generator.
    pub fn weyl(&mut self, x: &Element) -> Element {
        let p = self.homology(&x.grading.clone(), x.degree);
        let coords = p.weyl[x.level as usize].apply(&x.coords);
        let coords = p.levels[x.level as usize].reduce(&coords);
        Element { grading: x.grading.clone(), degree: x.degree, level: x.level, coords }
    }

    /// Division per the paper: y/x is defined when there is a unique cyclic
    /// subgroup C of H_{deg y - deg x}(S^{grading y - grading x}) mapped
    /// isomorphically onto <y> by multiplication by x; the value is the
    /// preimage of y in C. None when the condition fails.
    pub fn divide(&mut self, y: &Element, x: &Element) -> Option<Element> {
        assert_eq!(x.level, y.level, "division needs a common level");
        let grading = (&y.grading - &x.grading).normalized();
        let degree = y.degree - x.degree;
        let level = y.level;
        let (a_rank, a_orders) = {
            let pa = self.homology(&grading, degree);
            let g = &pa.levels[level as usize];
            (g.rank(), (0..g.rank()).map(|i| g.order(i).clone()).collect::<Vec<_>>())
        };
        let o_y = {
            let pb = self.homology(&y.grading.clone(), y.degree);
            pb.levels[level as usize].element_order(&y.coords)
        };

        // multiplication-by-x on the generators of A
        let mut t_cols: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..a_rank {
            let mut coords = vec![BigInt::zero(); a_rank];
            coords[i] = BigInt::one();
            let gen = Element { grading: grading.clone(), degree, level, coords };
            let img = self.multiply(&gen, x);
            t_cols.push(img.coords);
        }

        let pa = self.homology(&grading, degree);
        let pb = self.homology(&y.grading.clone(), y.degree);
        let a_group = &pa.levels[level as usize];
        let b_group = &pb.levels[level as usize];

        if o_y.is_zero() {
            // infinite cyclic <y>
            let kernel = group_kernel(&t_cols, a_group, b_group);
            let kernel_elts = enumerate_subgroup(&kernel, &a_orders, 1 << 12)?;
            let mut candidates: Vec<Vec<BigInt>> = Vec::new();
            let mut toward_y: Vec<Vec<BigInt>> = Vec::new();
            for sign in [1i64, -1] {
                let target: Vec<BigInt> = y.coords.iter().map(|c| c * sign).collect();
                if let Some(c0) =
                    solve_in_group(&t_cols, a_group, b_group, &b_group.reduce(&target))
                {
                    for k in &kernel_elts {
                        let c: Vec<BigInt> = c0.iter().zip(k).map(|(a, b)| a + b).collect();
                        let c = a_group.reduce(&c);
                        candidates.push(canonical_generator(&c, &a_orders));
                        if sign == 1 {
                            toward_y.push(c);
                        }
                    }
                }
            }
            candidates.sort();
            candidates.dedup();
            if candidates.len() != 1 {
                return None;
            }
            let pre = toward_y.into_iter().next()?;
            return Some(Element { grading, degree, level, coords: pre });
        }

        // finite <y>: enumerate the torsion subgroup of A
        use num_traits::ToPrimitive;
        let torsion_idx: Vec<usize> = (0..a_rank).filter(|&i| !a_orders[i].is_zero()).collect();
        let mut total = BigInt::one();
        for &i in &torsion_idx {
            total *= &a_orders[i];
        }
        let total = total.to_usize()?;
        if total > 1 << 14 {
            return None;
        }
        let y_red = b_group.reduce(&y.coords);
        let apply_t = |c: &[BigInt]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); b_group.rank()];
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, v) in t_cols[i].iter().enumerate() {
                    out[j] += ci * v;
                }
            }
            b_group.reduce(&out)
        };
        let mut subgroups: Vec<Vec<Vec<BigInt>>> = Vec::new();
        let mut preimages: Vec<Vec<BigInt>> = Vec::new();
        for e in 0..total {
            let mut rem = e;
            let mut c = vec![BigInt::zero(); a_rank];
            for &i in &torsion_idx {
                let o = a_orders[i].to_usize().unwrap();
                c[i] = BigInt::from(rem % o);
                rem /= o;
            }
            if a_group.element_order(&c) != o_y {
                continue;
            }
            let img = apply_t(&c);
            if b_group.element_order(&img) != o_y {
                continue;
            }
            if !in_cyclic(&img, &y_red, b_group, &o_y) {
                continue;
            }
            // the subgroup <c> as a sorted element set, and the preimage of y
            let mut elems = Vec::new();
            let mut pre = None;
            let mut acc = vec![BigInt::zero(); a_rank];
            loop {
                acc =
                    a_group.reduce(&acc.iter().zip(&c).map(|(a, b)| a + b).collect::<Vec<_>>());
                if pre.is_none() && apply_t(&acc) == y_red {
                    pre = Some(acc.clone());
                }
                elems.push(acc.clone());
                if acc.iter().all(|v| v.is_zero()) {
                    break;
                }
            }
            let pre = pre?;
            elems.sort();
            if !subgroups.contains(&elems) {
                subgroups.push(elems);
                preimages.push(pre);
            }
        }
        if subgroups.len() != 1 {
            return None;
        }
        Some(Element { grading, degree, level, coords: preimages.pop().unwrap() })
    }

    /// Inverse when it exists: 1/x.
    pub fn invert(&mut self, x: &Element) -> Option<Element> {
        let one = self.unit(x.level);
        self.divide(&one, x)
    }

    /// Integer power; negative powers require invertibility.
    pub fn power(&mut self, x: &Element, n: i64) -> Option<Element> {
        if n == 0 {
            return Some(self.unit(x.level));
        }
        let base = if n < 0 { self.invert(x)? } else { x.clone() };
        let mut acc = base.clone();
        for _ in 1..n.abs() {
            acc = self.multiply(&acc, &base);
        }
        Some(acc)
    }
}

/// Componentwise min of two actual representations.
fn overlap_of(p: &VirtualRep, q: &VirtualRep) -> VirtualRep {
    let mut out = VirtualRep::zero();
    out.sign = p.sign.min(q.sign);
    for (&k, &v) in &p.rotations {
        let w = q.rotations.get(&k).copied().unwrap_or(0);
        if v.min(w) > 0 {
            out.rotations.insert(k, v.min(w));
        }
    }
    out.normalized()
}

/// Solve sum_i x_i col_i = target inside the group `dst`; x reduced in `src`.
fn solve_in_group(
    cols: &[Vec<BigInt>],
    src: &HomologyGroup,
    dst: &HomologyGroup,
    target: &[BigInt],
) -> Option<Vec<BigInt>> {
    let rows = dst.rank();
    let mut all_cols: Vec<Vec<BigInt>> = cols.to_vec();
    for j in 0..rows {
        if !dst.order(j).is_zero() {
            let mut c = vec![BigInt::zero(); rows];
            c[j] = dst.order(j).clone();
            all_cols.push(c);
        }
    }
    let mat = IntMat::from_cols(&all_cols, rows);
    let sol = solve(&mat, target)?;
    Some(src.reduce(&sol[..cols.len()].to_vec()))
}

/// Generators of ker(T) as a subgroup of `src`.
fn group_kernel(
    cols: &[Vec<BigInt>],
    src: &HomologyGroup,
    dst: &HomologyGroup,
) -> Vec<Vec<BigInt>> {
    let rows = dst.rank();
    let n = cols.len();
    let mut all_cols: Vec<Vec<BigInt>> = cols.to_vec();
    for j in 0..rows {
        if !dst.order(j).is_zero() {
            let mut c = vec![BigInt::zero(); rows];
            c[j] = dst.order(j).clone();
            all_cols.push(c);
        }
    }
    // the source torsion relations add kernel elements o_i e_i as well
    let mat = IntMat::from_cols(&all_cols, rows);
    let ker = Solver::new(&mat).kernel();
    let mut gens = Vec::new();
    for j in 0..ker.cols() {
        let full = ker.col_vec(j);
        let x = src.reduce(&full[..n].to_vec());
        if !x.iter().all(|v| v.is_zero()) {
            gens.push(x);
        }
    }
    gens
}

/// Elements of the subgroup generated by `gens`; None if infinite or larger
/// than the bound.
fn enumerate_subgroup(
    gens: &[Vec<BigInt>],
    orders: &[BigInt],
    bound: usize,
) -> Option<Vec<Vec<BigInt>>> {
    for g in gens {
        for (i, c) in g.iter().enumerate() {
            if orders[i].is_zero() && !c.is_zero() {
                return None;
            }
        }
    }
    let reduce = |v: &[BigInt]| -> Vec<BigInt> {
        v.iter()
            .zip(orders)
            .map(|(c, o)| {
                if o.is_zero() {
                    c.clone()
                } else {
                    num_integer::Integer::mod_floor(c, o)
                }
            })
            .collect()
    };
    let zero = vec![BigInt::zero(); orders.len()];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = reduce(&v.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>());
            if seen.insert(w.clone()) {
                if seen.len() > bound {
                    return None;
                }
                frontier.push(w);
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Canonical generator of an infinite cyclic subgroup: fix the sign by the
/// first nonzero free coordinate.
fn canonical_generator(c: &[BigInt], orders: &[BigInt]) -> Vec<BigInt> {
    for (v, o) in c.iter().zip(orders) {
        if o.is_zero() && !v.is_zero() {
            if v.is_negative() {
                return c.iter().map(|x| -x.clone()).collect();
            }
            return c.to_vec();
        }
    }
    c.to_vec()
}

/// Is y in the cyclic subgroup generated by img (of finite order o)?
fn in_cyclic(img: &[BigInt], y: &[BigInt], group: &HomologyGroup, o: &BigInt) -> bool {
    use num_traits::ToPrimitive;
    let o = match o.to_usize() {
        Some(v) => v,
        None => return false,
    };
    let mut acc = vec![BigInt::zero(); img.len()];
    for _ in 0..o {
        acc = group.reduce(&acc.iter().zip(img).map(|(a, b)| a + b).collect::<Vec<_>>());
        if acc == y {
            return true;
        }
    }
    false
}

/// Named classes for C_4 (and the general Euler classes).
impl Engine {
    /// Euler class of the sign representation: H_0(S^sigma), top level.
    pub fn a_sigma(&mut self) -> Element {
        self.euler_class(&VirtualRep::sigma(1))
    }

    /// Euler class of the faithful rotation: H_0(S^lambda), top level.
    pub fn a_lambda(&mut self) -> Element {
        self.euler_class(&VirtualRep::lambda_k(self.group.exponent, 1))
    }

    /// The class of the fixed basepoint cell of S^V at the top level; this
    /// is the chain-level image of S^0 -> S^V, so it carries no sign
    /// ambiguity.
    pub fn euler_class(&mut self, v: &VirtualRep) -> Element {
        let key = Model::canonical_key(v);
        let model = self.model(&key);
        let top_level = self.group.exponent;
        let m0 = model.complex().module(0).expect("no basepoint cell");
        let mut bottom = vec![BigInt::zero(); m0.bottom_rank()];
        bottom[0] = BigInt::one();
        let p = self.presentation_of(&key, 0);
        let lvl = m0
            .express_level(Level(top_level), &bottom)
            .expect("basepoint cell is not fixed");
        let coords = p.levels[top_level as usize]
            .express(&lvl)
            .expect("basepoint cell is not a cycle");
        Element { grading: v.clone(), degree: 0, level: top_level, coords }
    }

    /// Orientation class u_sigma: generator of the middle level of
    /// H_1(S^sigma).
    pub fn u_sigma(&mut self) -> Element {
        let v = VirtualRep::sigma(1);
        let p = self.homology(&v, 1);
        let mid = self.group.exponent - 1;
        assert_eq!(p.levels[mid as usize].free_rank, 1);
        Element { grading: v, degree: 1, level: mid, coords: vec![BigInt::one()] }
    }

    /// Orientation class u_{2 sigma}: generator of the top of
    /// H_2(S^{2 sigma}), normalized so Res(u_{2 sigma}) = u_sigma^2.
    pub fn u_2sigma(&mut self) -> Element {
        let v = VirtualRep::sigma(2);
        let top = self.group.exponent;
        {
            let p = self.homology(&v, 2);
            assert_eq!(p.levels[top as usize].free_rank, 1);
        }
        let mut gen =
            Element { grading: v, degree: 2, level: top, coords: vec![BigInt::one()] };
        let us = self.u_sigma();
        let us2 = self.multiply(&us, &us);
        let r = self.res(&gen, top - 1);
        if r.coords != us2.coords {
            gen.coords = vec![BigInt::from(-1)];
            let r2 = self.res(&gen, top - 1);
            assert_eq!(r2.coords, us2.coords, "orientation coherence failed");
        }
        gen
    }

    /// Orientation class u_lambda: generator of the top of H_2(S^lambda).
    pub fn u_lambda(&mut self) -> Element {
        let v = VirtualRep::lambda_k(self.group.exponent, 1);
        let top = self.group.exponent;
        let p = self.homology(&v, 2);
        assert_eq!(p.levels[top as usize].free_rank, 1);
        Element { grading: v, degree: 2, level: top, coords: vec![BigInt::one()] }
    }

    /// s_3: the generator of the top level of H_{-3}(S^{-2 lambda}) = Z/4,
    /// fixed only up to the inherent sign ambiguity.
    pub fn s3(&mut self) -> Element {
        assert_eq!((self.group.prime, self.group.exponent), (2, 2));
        let v = VirtualRep::c4(0, -2);
        let p = self.homology(&v, -3);
        assert_eq!(p.levels[2].torsion, vec![BigInt::from(4)]);
        Element { grading: v, degree: -3, level: 2, coords: vec![BigInt::one()] }
    }

    /// w_n = Tr(u_sigma^{-n}) for odd n >= 3.
    pub fn w(&mut self, n: i64) -> Element {
        assert!(n >= 3 && n % 2 == 1);
        let us = self.u_sigma();
        let usin = self.power(&us, -n).expect("u_sigma is invertible");
        self.tr(&usin, self.group.exponent)
    }

    /// x_{n,m} = Tr(res(u_sigma)^{-n} res(u_lambda)^{-m}) for odd n, m >= 1.
    pub fn x_class(&mut self, n: i64, m: i64) -> Element {
        assert!(n >= 1 && n % 2 == 1 && m >= 1);
        let us = self.u_sigma();
        let usb = self.res(&us, 0);
        let ul = self.u_lambda();
        let ulb = self.res(&ul, 0);
        let a = self.power(&usb, -n).expect("bottom u_sigma is invertible");
        let b = self.power(&ulb, -m).expect("bottom u_lambda is invertible");
        let prod = self.multiply(&a, &b);
        self.tr(&prod, self.group.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn unit_multiplies() {
        let mut e = Engine::c4();
        let one = e.unit(2);
        let a = e.a_sigma();
        let p = e.multiply(&one, &a);
        assert_eq!(p.coords, a.coords);
        let p2 = e.multiply(&a, &one);
        assert_eq!(p2.coords, a.coords);
    }

    #[test]
    fn euler_classes_are_torsion_generators() {
        let mut e = Engine::c4();
        let a = e.a_sigma();
        let h = e.homology(&VirtualRep::sigma(1), 0);
        assert_eq!(h.levels[2].torsion, vec![bi(2)]);
        assert_eq!(a.coords, vec![bi(1)]);
        let al = e.a_lambda();
        let h = e.homology(&VirtualRep::lambda_k(2, 1), 0);
        assert_eq!(h.levels[2].torsion, vec![bi(4)]);
        assert!(!al.is_zero());
    }

    #[test]
    fn powers_of_euler_classes() {
        let mut e = Engine::c4();
        let a = e.a_sigma();
        let a2 = e.multiply(&a, &a);
        assert_eq!(a2.grading, VirtualRep::sigma(2));
        assert!(!a2.is_zero(), "a_sigma^2 must generate");
        let twice = e.scale(2, &a);
        assert!(twice.is_zero(), "2 a_sigma = 0");
    }

    #[test]
    fn orientation_coherence() {
        let mut e = Engine::c4();
        let u2s = e.u_2sigma();
        let us = e.u_sigma();
        let us2 = e.multiply(&us, &us);
        let r = e.res(&u2s, 1);
        assert_eq!(r.coords, us2.coords);
    }

    #[test]
    fn gold_relation() {
        let mut e = Engine::c4();
        let a = e.a_sigma();
        let a2 = e.multiply(&a, &a);
        let ul = e.u_lambda();
        let lhs = e.multiply(&a2, &ul);
        let u2s = e.u_2sigma();
        let al = e.a_lambda();
        let rhs1 = e.multiply(&u2s, &al);
        let rhs = e.scale(2, &rhs1);
        assert_eq!(lhs.coords, rhs.coords, "Gold relation failed");
        assert!(!lhs.is_zero(), "both sides of Gold are nonzero");
        let h = e.homology(&VirtualRep::c4(2, 1), 2);
        assert_eq!(h.levels[2].torsion, vec![bi(4)]);
    }

    #[test]
    fn u_sigma_is_invertible() {
        let mut e = Engine::c4();
        let us = e.u_sigma();
        let inv = e.invert(&us).expect("u_sigma must be invertible");
        let p = e.multiply(&us, &inv);
        let one = e.unit(1);
        assert_eq!(p.coords, one.coords);
        assert_eq!(p.grading, VirtualRep::zero());
    }

    #[test]
    fn division_semantics() {
        let mut e = Engine::c4();
        let u2s = e.u_2sigma();
        let one = e.unit(2);
        let two = e.scale(2, &one);
        assert!(e.divide(&two, &u2s).is_some(), "2/u_2s must exist");
        assert!(e.divide(&one, &u2s).is_none(), "1/u_2s must not exist");
        let a = e.a_sigma();
        let d = e.divide(&a, &one).expect("x/1 exists");
        assert_eq!(d.coords, a.coords);
    }

    #[test]
    fn frobenius_relation() {
        let mut e = Engine::c4();
        let us = e.u_sigma();
        let x = e.power(&us, -3).unwrap();
        let y = e.u_2sigma();
        let trx = e.tr(&x, 2);
        let lhs = e.multiply(&trx, &y);
        let resy = e.res(&y, 1);
        let xres = e.multiply(&x, &resy);
        let rhs = e.tr(&xres, 2);
        assert_eq!(lhs.grading, rhs.grading);
        assert_eq!(lhs.coords, rhs.coords, "Frobenius failed");
    }

    #[test]
    fn w3_is_2_torsion_generator() {
        let mut e = Engine::c4();
        let w3 = e.w(3);
        assert_eq!(w3.grading, VirtualRep::sigma(-3));
        assert_eq!(w3.degree, -3);
        let h = e.homology(&VirtualRep::sigma(-3), -3);
        assert_eq!(h.levels[2].torsion, vec![bi(2)]);
        assert!(!w3.is_zero());
        // Tr(u_sigma^{-1}) = 0, so there is no w_1
        let us = e.u_sigma();
        let usi = e.invert(&us).unwrap();
        let w1 = e.tr(&usi, 2);
        assert!(w1.is_zero(), "Tr(u_sigma^-1) must vanish");
    }
}
