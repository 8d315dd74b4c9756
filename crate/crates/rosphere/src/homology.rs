//! Homology of a chain complex of free Mackey functors, one degree at a
//! time: the abelian group at every subgroup level (computed by Smith
//! normal form on the fixed-point subcomplexes), the induced restriction,
//! transfer and Weyl matrices on homology generators, and generator lifts.

use crate::chains::Complex;
use crate::group::{Group, Level};
use crate::zlinalg::{HomologyGroup, IntMat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// The homology Mackey functor of one degree of a complex.
pub struct Presentation {
    pub group: Group,
    pub modulus: u32,
    pub degree: i64,
    /// Homology at each level, index = subgroup order exponent.
    pub levels: Vec<HomologyGroup>,
    /// res[l] : level l+1 -> level l on homology generators.
    pub res: Vec<IntMat>,
    /// tr[l] : level l -> level l+1.
    pub tr: Vec<IntMat>,
    /// weyl[l] : action of the chosen generator g at level l.
    pub weyl: Vec<IntMat>,
}

/// The differential at a fixed level, in orbit-sum coordinates.
pub fn level_diff(cx: &Complex, k: i64, level: Level) -> IntMat {
    let src = match cx.module(k) {
        Some(m) => m,
        None => {
            let rows = cx.module(k - 1).map_or(0, |m| m.level_rank(level));
            return IntMat::zeros(rows, 0);
        }
    };
    let dst = match cx.module(k - 1) {
        Some(m) => m,
        None => return IntMat::zeros(0, src.level_rank(level)),
    };
    let d = cx.diff(k);
    let entries = src.level_entries(level);
    let mut out = IntMat::zeros(dst.level_rank(level), entries.len());
    for (j, &(b, t)) in entries.iter().enumerate() {
        let v = src.level_vector(level, b, t);
        let w = d.apply(&v);
        let coords = dst
            .express_level(level, &w)
            .expect("differential does not preserve fixed points");
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out.set(i, j, c.clone());
            }
        }
    }
    out
}

/// Compute the homology Mackey functor of `cx` in degree `k`.
pub fn presentation(cx: &Complex, k: i64, modulus: u32) -> Presentation {
    let group = cx.group;
    let n = group.exponent as usize;

    let mut levels = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let level = Level(l as u32);
        let d_out = level_diff(cx, k, level);
        let d_in = level_diff(cx, k + 1, level);
        let mut h = HomologyGroup::new(&d_in, &d_out, modulus);
        // orientation normalization: make the first nonzero bottom-level
        // coordinate of every generator lift positive
        if let Some(m) = cx.module(k) {
            let inc = m.inclusion(level);
            for i in 0..h.rank() {
                let bottom = inc.apply(&h.gen_chain(i));
                if let Some(first) = bottom.iter().find(|x| !x.is_zero()) {
                    if first.is_negative() {
                        h.negate_gen(i);
                    }
                }
            }
        }
        levels.push(h);
    }

    let express_bottom = |bottom: &[BigInt], l: usize| -> Vec<BigInt> {
        let m = cx.module(k).expect("nontrivial homology without a module");
        let coords = m
            .express_level(Level(l as u32), bottom)
            .expect("structure map image is not fixed");
        levels[l]
            .express(&coords)
            .expect("structure map image is not a cycle")
    };

    let mut res = Vec::new();
    let mut tr = Vec::new();
    let mut weyl = Vec::new();
    for l in 0..=n {
        let level = Level(l as u32);
        if l < n {
            // res: l+1 -> l
            let hi = &levels[l + 1];
            let mut rm = IntMat::zeros(levels[l].rank(), hi.rank());
            if hi.rank() > 0 {
                let m = cx.module(k).unwrap();
                let inc = m.inclusion(Level(l as u32 + 1));
                for j in 0..hi.rank() {
                    let bottom = inc.apply(&hi.gen_chain(j));
                    for (i, c) in express_bottom(&bottom, l).iter().enumerate() {
                        rm.set(i, j, c.clone());
                    }
                }
            }
            res.push(rm);

            // tr: l -> l+1
            let lo = &levels[l];
            let mut tm = IntMat::zeros(levels[l + 1].rank(), lo.rank());
            if lo.rank() > 0 {
                let m = cx.module(k).unwrap();
                let inc = m.inclusion(level);
                let step = group.order() / group.subgroup_order(Level(l as u32 + 1));
                for j in 0..lo.rank() {
                    let bottom = inc.apply(&lo.gen_chain(j));
                    let mut moved = vec![BigInt::zero(); bottom.len()];
                    for rep in 0..group.prime as u64 {
                        for (i, c) in bottom.iter().enumerate() {
                            if !c.is_zero() {
                                moved[m.translate_bottom(i, rep * step)] += c;
                            }
                        }
                    }
                    for (i, c) in express_bottom(&moved, l + 1).iter().enumerate() {
                        tm.set(i, j, c.clone());
                    }
                }
            }
            tr.push(tm);
        }

        // weyl at level l
        let g = &levels[l];
        let mut wm = IntMat::zeros(g.rank(), g.rank());
        if g.rank() > 0 {
            let m = cx.module(k).unwrap();
            let inc = m.inclusion(level);
            for j in 0..g.rank() {
                let bottom = inc.apply(&g.gen_chain(j));
                let moved: Vec<BigInt> = {
                    let mut out = vec![BigInt::zero(); bottom.len()];
                    for (i, c) in bottom.iter().enumerate() {
                        if !c.is_zero() {
                            out[m.translate_bottom(i, 1)] += c;
                        }
                    }
                    out
                };
                for (i, c) in express_bottom(&moved, l).iter().enumerate() {
                    wm.set(i, j, c.clone());
                }
            }
        }
        weyl.push(wm);
    }

    Presentation { group, modulus, degree: k, levels, res, tr, weyl }
}

impl Presentation {
    pub fn level(&self, l: u32) -> &HomologyGroup {
        &self.levels[l as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|h| h.is_trivial())
    }

    /// Apply res repeatedly to coordinates at `from`, landing at `to`.
    pub fn restrict_coords(&self, from: u32, to: u32, coords: &[BigInt]) -> Vec<BigInt> {
        assert!(to <= from);
        let mut cur = coords.to_vec();
        let mut l = from;
        while l > to {
            cur = self.res[(l - 1) as usize].apply(&cur);
            l -= 1;
        }
        self.levels[to as usize].reduce(&cur)
    }

    /// Apply tr repeatedly to coordinates at `from`, landing at `to`.
    pub fn transfer_coords(&self, from: u32, to: u32, coords: &[BigInt]) -> Vec<BigInt> {
        assert!(from <= to);
        let mut cur = coords.to_vec();
        let mut l = from;
        while l < to {
            cur = self.tr[l as usize].apply(&cur);
            l += 1;
        }
        self.levels[to as usize].reduce(&cur)
    }

    /// Short human-readable description: groups at top;...;bottom.
    pub fn describe_levels(&self) -> String {
        let mut parts: Vec<String> =
            self.levels.iter().rev().map(|h| h.describe()).collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        parts.join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{dual_complex, positive_flag, sphere_complex};
    use crate::group::VirtualRep;

    fn c4() -> Group {
        Group::c4()
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sphere_zero() {
        let cx = sphere_complex(c4(), &VirtualRep::zero());
        let p = presentation(&cx, 0, 0);
        // underline Z: all levels Z, res = 1, tr = 2
        for l in 0..=2 {
            assert_eq!(p.level(l).free_rank, 1);
            assert!(p.level(l).torsion.is_empty());
        }
        for l in 0..2 {
            assert_eq!(p.res[l], IntMat::identity(1));
            assert_eq!(p.tr[l], IntMat::from_rows(&[vec![2]]));
        }
    }

    #[test]
    fn sigma_top_degree_is_z_minus() {
        let cx = positive_flag(c4(), &VirtualRep::sigma(1));
        let p = presentation(&cx, 1, 0);
        assert!(p.level(2).is_trivial());
        assert_eq!(p.level(1).free_rank, 1);
        assert_eq!(p.level(0).free_rank, 1);
        // weyl acts by -1 at middle and bottom
        assert_eq!(p.weyl[0], IntMat::from_rows(&[vec![-1]]));
        assert_eq!(p.weyl[1], IntMat::from_rows(&[vec![-1]]));
        // res = 1, tr = 2 between middle and bottom
        assert_eq!(p.res[0], IntMat::from_rows(&[vec![1]]));
        assert_eq!(p.tr[0], IntMat::from_rows(&[vec![2]]));
    }

    #[test]
    fn h0_of_sigma_is_z2_on_top() {
        let cx = positive_flag(c4(), &VirtualRep::sigma(1));
        let p = presentation(&cx, 0, 0);
        assert_eq!(p.level(2).torsion, vec![bi(2)]);
        assert!(p.level(1).is_trivial());
        assert!(p.level(0).is_trivial());
    }

    #[test]
    fn h2_of_2sigma_lambda_is_z4() {
        // the <Z/4> of H_2(S^{2 sigma + lambda})
        let cx = positive_flag(c4(), &VirtualRep::c4(2, 1));
        let p = presentation(&cx, 2, 0);
        assert_eq!(p.level(2).torsion, vec![bi(4)]);
        assert_eq!(p.level(1).torsion, vec![bi(2)]);
        assert!(p.level(0).is_trivial());
        // res: Z/4 -> Z/2 surjective, tr: Z/2 -> Z/4 multiplication by 2
        let r = p.res[1].get(0, 0).clone();
        assert_eq!(
            num_integer::Integer::mod_floor(&r, &bi(2)),
            bi(1)
        );
        let t = p.tr[1].get(0, 0).clone();
        assert_eq!(num_integer::Integer::mod_floor(&t, &bi(4)), bi(2));
    }

    #[test]
    fn negative_sigma_duality() {
        // H_{-1}(S^{-sigma}) = Z_- (paper's first dual computation)
        let cx = dual_complex(&positive_flag(c4(), &VirtualRep::sigma(1)));
        let p = presentation(&cx, -1, 0);
        assert!(p.level(2).is_trivial());
        assert_eq!(p.level(1).free_rank, 1);
        assert_eq!(p.level(0).free_rank, 1);
        assert_eq!(p.weyl[1], IntMat::from_rows(&[vec![-1]]));
        assert_eq!(p.res[0], IntMat::from_rows(&[vec![1]]));
        assert_eq!(p.tr[0], IntMat::from_rows(&[vec![2]]));
    }

    #[test]
    fn negative_2sigma_is_pstar_l() {
        // H_{-2}(S^{-2 sigma}) = p*L: res(top->mid) = 2, tr = 1,
        // res(mid->bot) = 1, tr = 2
        let cx = dual_complex(&positive_flag(c4(), &VirtualRep::sigma(2)));
        let p = presentation(&cx, -2, 0);
        for l in 0..=2 {
            assert_eq!(p.level(l).free_rank, 1, "level {}", l);
            assert!(p.level(l).torsion.is_empty());
        }
        let r21 = p.res[1].get(0, 0).abs();
        let t12 = p.tr[1].get(0, 0).abs();
        let r10 = p.res[0].get(0, 0).abs();
        let t01 = p.tr[0].get(0, 0).abs();
        assert_eq!((r21, t12, r10, t01), (bi(2), bi(1), bi(1), bi(2)));
    }

    #[test]
    fn out_of_range_is_zero() {
        let cx = sphere_complex(c4(), &VirtualRep::sigma(1));
        let p = presentation(&cx, 17, 0);
        assert!(p.is_zero());
    }

    #[test]
    fn mackey_condition_on_homology() {
        // tr o res = sum of weyl translates, on homology of a mixed sphere
        let cx = sphere_complex(c4(), &VirtualRep::c4(2, 2));
        for k in 0..=6 {
            let p = presentation(&cx, k, 0);
            for l in 0..2usize {
                let level_rank = p.levels[l].rank();
                if level_rank == 0 || p.levels[l + 1].rank() == 0 {
                    continue;
                }
                let lhs = p.res[l].mul(&p.tr[l]);
                // sum over the p coset translates at level l
                let step = c4().order() / c4().subgroup_order(Level(l as u32 + 1));
                let mut acc = IntMat::zeros(level_rank, level_rank);
                let mut pw = IntMat::identity(level_rank);
                for rep in 0..2u64 {
                    if rep > 0 {
                        for _ in 0..step {
                            pw = p.weyl[l].mul(&pw);
                        }
                    }
                    for i in 0..level_rank {
                        for j in 0..level_rank {
                            let v = acc.get(i, j) + pw.get(i, j);
                            acc.set(i, j, v);
                        }
                    }
                }
                // compare modulo the group orders
                for j in 0..level_rank {
                    let a = p.levels[l].reduce(&lhs.col_vec(j));
                    let b = p.levels[l].reduce(&acc.col_vec(j));
                    assert_eq!(a, b, "Mackey condition at degree {} level {}", k, l);
                }
            }
        }
    }

    #[test]
    fn mod2_coefficients() {
        // H_*(S^sigma; Z/2): bottom level is the sphere mod 2
        let cx = positive_flag(c4(), &VirtualRep::sigma(1));
        let p1 = presentation(&cx, 1, 2);
        assert_eq!(p1.level(0).torsion, vec![bi(2)]);
        let p0 = presentation(&cx, 0, 2);
        assert_eq!(p0.level(2).torsion, vec![bi(2)]);
    }
}
