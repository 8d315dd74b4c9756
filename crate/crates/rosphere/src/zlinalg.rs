//! Exact integer linear algebra: dense matrices over arbitrary-precision
//! integers, Smith normal form with unimodular witnesses, Z-linear solving,
//! and presentations of subquotient groups (homology) with generator lifts.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &BigInt) {
        let idx = i * self.cols + j;
        self.data[idx] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn col_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j).clone())
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    pub fn from_cols(cols: &[Vec<BigInt>], rows: usize) -> IntMat {
        let mut m = IntMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] += q * row[k]
    fn row_addmul(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(k, j).clone();
            if !v.is_zero() {
                let idx = i * self.cols + j;
                self.data[idx] += q * v;
            }
        }
    }

    /// col[j] += q * col[k]
    fn col_addmul(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, k).clone();
            if !v.is_zero() {
                let idx = i * self.cols + j;
                self.data[idx] += q * v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular.
/// `uinv` and `vinv` are the inverses, so `a = uinv * d * vinv`.
pub struct Snf {
    pub u: IntMat,
    pub uinv: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub vinv: IntMat,
}

impl Snf {
    pub fn diag(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diag().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form over Z. Pivot choice: smallest nonzero absolute value,
/// ties broken by position, which keeps intermediate entries small.
pub fn smith(a: &IntMat) -> Snf {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMat::identity(rows);
    let mut uinv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut vinv = IntMat::identity(cols);

    // Row op "row_i += q row_k" on d mirrors on u; uinv gets the inverse column op.
    macro_rules! row_op {
        ($i:expr, $k:expr, $q:expr) => {{
            let q: BigInt = $q;
            d.row_addmul($i, $k, &q);
            u.row_addmul($i, $k, &q);
            uinv.col_addmul($k, $i, &(-q));
        }};
    }
    macro_rules! col_op {
        ($j:expr, $k:expr, $q:expr) => {{
            let q: BigInt = $q;
            d.col_addmul($j, $k, &q);
            v.col_addmul($j, $k, &q);
            vinv.row_addmul($k, $j, &(-q));
        }};
    }

    let n = rows.min(cols);
    for k in 0..n {
        'pivot: loop {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = d.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if e.abs() < d.get(*bi, *bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let (pi, pj) = match best {
                None => break 'pivot,
                Some(p) => p,
            };
            if pi != k {
                d.swap_rows(k, pi);
                u.swap_rows(k, pi);
                uinv.swap_cols(k, pi);
            }
            if pj != k {
                d.swap_cols(k, pj);
                v.swap_cols(k, pj);
                vinv.swap_rows(k, pj);
            }
            if d.get(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
                uinv.negate_col(k);
            }

            let pivot = d.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let e = d.get(i, k);
                if !e.is_zero() {
                    let q = e / &pivot;
                    row_op!(i, k, -q);
                    if !d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                let e = d.get(k, j);
                if !e.is_zero() {
                    let q = e / &pivot;
                    col_op!(j, k, -q);
                    if !d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot row/col clear; enforce divisibility on the remaining block
            let mut fix: Option<usize> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.get(i, j) % &pivot).is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    // fold the offending row into the pivot row
                    row_op!(k, i, BigInt::one());
                    continue 'pivot;
                }
                None => break 'pivot,
            }
        }
        if d.get(k, k).is_zero() {
            // trailing block entirely zero
            break;
        }
    }

    debug_assert!(u.mul(a).mul(&v) == d);
    Snf { u, uinv, d, v, vinv }
}

/// Decomposition of a fixed matrix used to solve `a x = b` repeatedly.
pub struct Solver {
    snf: Snf,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(a: &IntMat) -> Solver {
        Solver { snf: smith(a), rows: a.rows(), cols: a.cols() }
    }

    /// Exact integer solution of `a x = b`, or None when none exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let ub = self.snf.u.apply(b);
        let n = self.rows.min(self.cols);
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            let di = if i < n { self.snf.d.get(i, i).clone() } else { BigInt::zero() };
            if di.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = num_integer::Integer::div_rem(&ub[i], &di);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        Some(self.snf.v.apply(&y))
    }

    /// Basis of the integer kernel lattice, as columns.
    pub fn kernel(&self) -> IntMat {
        let n = self.rows.min(self.cols);
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..self.cols {
            if j >= n || self.snf.d.get(j, j).is_zero() {
                cols.push(self.snf.v.col_vec(j));
            }
        }
        IntMat::from_cols(&cols, self.cols)
    }
}

pub fn solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(a).solve(b)
}

pub fn kernel(a: &IntMat) -> IntMat {
    Solver::new(a).kernel()
}

/// A finitely generated abelian group presented as ker(d_out)/im(d_in),
/// optionally with coefficients mod q, with chosen generating cycles and a
/// coordinate map `express` for arbitrary cycles.
///
/// Generators are ordered torsion factors first (ascending divisibility),
/// then free generators. Invariant factors equal to 1 are dropped.
pub struct HomologyGroup {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
    gens: Vec<Vec<BigInt>>,
    orders: Vec<BigInt>,
    signs: Vec<BigInt>,
    cycles: IntMat,
    cycle_solver: Solver,
    u: IntMat,
    diag: Vec<BigInt>,
    perm: Vec<usize>,
}

impl HomologyGroup {
    /// Homology at the middle of `C_in --d_in--> C --d_out--> C_out`,
    /// with coefficients Z (modulus 0) or Z/q (modulus q > 0).
    pub fn new(d_in: &IntMat, d_out: &IntMat, modulus: u32) -> HomologyGroup {
        let n = d_out.cols();
        assert_eq!(d_in.rows(), n, "d_in/d_out are not composable");

        // cycle lattice: ker(d_out) over Z, or { x : d_out x = 0 mod q }
        let cycles = if modulus == 0 {
            kernel(d_out)
        } else {
            let q = BigInt::from(modulus);
            // kernel of [d_out | -q I], projected to the x block
            let stacked = d_out.hstack(&IntMat::from_fn(d_out.rows(), d_out.rows(), |i, j| {
                if i == j { -q.clone() } else { BigInt::zero() }
            }));
            let k = kernel(&stacked);
            IntMat::from_fn(n, k.cols(), |i, j| k.get(i, j).clone())
        };
        let cycle_solver = Solver::new(&cycles);
        let z = cycles.cols();

        // relations: boundaries (and q * ambient basis when working mod q)
        let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..d_in.cols() {
            let c = d_in.col_vec(j);
            let y = cycle_solver
                .solve(&c)
                .expect("boundary is not a cycle: d_out * d_in != 0");
            rel_cols.push(y);
        }
        if modulus > 0 {
            let q = BigInt::from(modulus);
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = q.clone();
                let y = cycle_solver.solve(&e).expect("q * basis vector not in cycle lattice");
                rel_cols.push(y);
            }
        }
        let rel = IntMat::from_cols(&rel_cols, z);
        let snf = smith(&rel);
        let nn = rel.rows().min(rel.cols());
        let diag: Vec<BigInt> = (0..z)
            .map(|i| if i < nn { snf.d.get(i, i).clone() } else { BigInt::zero() })
            .collect();

        let mut perm: Vec<usize> = Vec::new();
        for (i, di) in diag.iter().enumerate() {
            if !di.is_zero() && !di.is_one() {
                perm.push(i);
            }
        }
        let torsion: Vec<BigInt> = perm.iter().map(|&i| diag[i].clone()).collect();
        let free_start = perm.len();
        for (i, di) in diag.iter().enumerate() {
            if di.is_zero() {
                perm.push(i);
            }
        }
        let free_rank = perm.len() - free_start;

        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for &i in &perm {
            let coords = snf.uinv.col_vec(i);
            gens.push(cycles.apply(&coords));
            orders.push(diag[i].clone());
        }
        let signs = vec![BigInt::one(); perm.len()];

        HomologyGroup {
            torsion,
            free_rank,
            gens,
            orders,
            signs,
            cycles,
            cycle_solver,
            u: snf.u,
            diag,
            perm,
        }
    }

    pub fn zero() -> HomologyGroup {
        let z = IntMat::zeros(0, 0);
        HomologyGroup::new(&z, &IntMat::zeros(0, 0), 0)
    }

    /// Number of generators (torsion + free).
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// Order of the i-th generator (0 means infinite).
    pub fn order(&self, i: usize) -> &BigInt {
        &self.orders[i]
    }

    /// A chosen cycle representing the i-th generator, in the ambient basis.
    pub fn gen_chain(&self, i: usize) -> Vec<BigInt> {
        let s = &self.signs[i];
        self.gens[i].iter().map(|x| x * s).collect()
    }

    /// Flip the sign of a generator (used for orientation normalization).
    pub fn negate_gen(&mut self, i: usize) {
        let s = std::mem::take(&mut self.signs[i]);
        self.signs[i] = -s;
    }

    /// Coordinates of a cycle in the generator basis, reduced mod torsion.
    /// Returns None when the vector is not a cycle.
    pub fn express(&self, chain: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.cycles.cols() == 0 {
            // zero group: the only classes are boundaries
            return if self.cycles.rows() == 0 || chain.iter().all(|x| x.is_zero()) {
                Some(vec![])
            } else {
                self.cycle_solver.solve(chain).map(|_| vec![])
            };
        }
        let y = self.cycle_solver.solve(chain)?;
        let w = self.u.apply(&y);
        let mut out = Vec::with_capacity(self.gens.len());
        for (slot, &i) in self.perm.iter().enumerate() {
            let mut c = w[i].clone() * &self.signs[slot];
            if !self.diag[i].is_zero() {
                c = num_integer::Integer::mod_floor(&c, &self.diag[i]);
            }
            out.push(c);
        }
        Some(out)
    }

    /// Reduce arbitrary integer coordinates into canonical range.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.gens.len());
        coords
            .iter()
            .zip(&self.orders)
            .map(|(c, o)| if o.is_zero() { c.clone() } else { num_integer::Integer::mod_floor(c, o) })
            .collect()
    }

    pub fn is_zero_class(&self, coords: &[BigInt]) -> bool {
        self.reduce(coords).iter().all(|x| x.is_zero())
    }

    /// Chain vector representing the class with the given coordinates.
    pub fn chain_of(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let n = self.cycles.rows();
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, g) in self.gen_chain(i).iter().enumerate() {
                out[k] += c * g;
            }
        }
        out
    }

    /// The order of the element with the given coordinates (0 = infinite).
    pub fn element_order(&self, coords: &[BigInt]) -> BigInt {
        let coords = self.reduce(coords);
        let mut ord = BigInt::one();
        for (c, o) in coords.iter().zip(&self.orders) {
            if c.is_zero() {
                continue;
            }
            if o.is_zero() {
                return BigInt::zero();
            }
            let g = num_integer::Integer::gcd(c, o);
            let k = o / g;
            ord = num_integer::Integer::lcm(&ord, &k);
        }
        ord
    }

    /// Group rendered as invariant factors, e.g. "Z + Z/2".
    pub fn describe(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{}", t)).collect();
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        parts.join("+")
    }
}

/// gcd of all r x r minors of `a` (oracle for SNF tests; exponential, keep small).
pub fn minor_gcd(a: &IntMat, r: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if k > n {
            return vec![];
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
            }
            if idx[i] == i + n - k {
                return out;
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    fn det(a: &IntMat, rows: &[usize], cols: &[usize]) -> BigInt {
        let n = rows.len();
        if n == 0 {
            return BigInt::one();
        }
        // Laplace along the first row
        let mut acc = BigInt::zero();
        for (t, &c) in cols.iter().enumerate() {
            let e = a.get(rows[0], c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let d = det(a, &rows[1..], &sub_cols);
            if t % 2 == 0 {
                acc += e * d;
            } else {
                acc -= e * d;
            }
        }
        acc
    }
    let mut g = BigInt::zero();
    for rs in combos(a.rows(), r) {
        for cs in combos(a.cols(), r) {
            let d = det(a, &rs, &cs);
            g = num_integer::Integer::gcd(&g, &d);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn smith_identity() {
        let a = IntMat::identity(3);
        let s = smith(&a);
        assert_eq!(s.d, IntMat::identity(3));
    }

    #[test]
    fn smith_2x2() {
        // [[2,4],[6,8]] has invariant factors 2, 4 (|det| = 8)
        let a = IntMat::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith(&a);
        assert_eq!(s.diag(), vec![bi(2), bi(4)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.uinv), IntMat::identity(2));
        assert_eq!(s.vinv.mul(&s.v), IntMat::identity(2));
    }

    #[test]
    fn smith_zero() {
        let a = IntMat::zeros(2, 3);
        let s = smith(&a);
        assert!(s.d.is_zero());
    }

    #[test]
    fn solve_diag() {
        let a = IntMat::from_rows(&[vec![2]]);
        assert_eq!(solve(&a, &[bi(4)]), Some(vec![bi(2)]));
        assert_eq!(solve(&a, &[bi(3)]), None);
    }

    #[test]
    fn solve_triangular() {
        let a = IntMat::from_rows(&[vec![1, 1], vec![0, 2]]);
        let x = solve(&a, &[bi(3), bi(4)]).unwrap();
        assert_eq!(a.apply(&x), vec![bi(3), bi(4)]);
        assert_eq!(x, vec![bi(1), bi(2)]);
    }

    #[test]
    fn homology_free() {
        let h = HomologyGroup::new(&IntMat::zeros(1, 0), &IntMat::zeros(0, 1), 0);
        assert_eq!(h.free_rank, 1);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn homology_z2() {
        // 0 -> Z --2--> Z -> 0 at the right spot gives Z/2
        let d_in = IntMat::from_rows(&[vec![2]]);
        let h = HomologyGroup::new(&d_in, &IntMat::zeros(0, 1), 0);
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, vec![bi(2)]);
        let e = h.express(&[bi(1)]).unwrap();
        assert_eq!(e, vec![bi(1)]);
        let e2 = h.express(&[bi(2)]).unwrap();
        assert!(h.is_zero_class(&e2));
    }

    #[test]
    fn homology_circle() {
        // circle complex: two cells each degree, d = [[1,-1],[-1,1]]-shaped
        let d = IntMat::from_rows(&[vec![1, -1], vec![-1, 1]]);
        let h1 = HomologyGroup::new(&IntMat::zeros(2, 0), &d, 0);
        assert_eq!(h1.free_rank, 1);
        assert!(h1.torsion.is_empty());
        let h0 = HomologyGroup::new(&d, &IntMat::zeros(0, 2), 0);
        assert_eq!(h0.free_rank, 1);
        assert!(h0.torsion.is_empty());
    }

    #[test]
    fn homology_mod2() {
        // Z --2--> Z: with Z/2 coefficients both kernel and cokernel see Z/2
        let two = IntMat::from_rows(&[vec![2]]);
        let h = HomologyGroup::new(&IntMat::zeros(1, 0), &two, 2);
        assert_eq!(h.torsion, vec![bi(2)]);
        assert_eq!(h.free_rank, 0);
    }

    #[test]
    fn express_is_linear() {
        let d_in = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let h = HomologyGroup::new(&d_in, &IntMat::zeros(0, 2), 0);
        let x = [bi(1), bi(1)];
        let y = [bi(1), bi(2)];
        let xy = [bi(2), bi(3)];
        let ex = h.express(&x).unwrap();
        let ey = h.express(&y).unwrap();
        let exy = h.express(&xy).unwrap();
        let sum: Vec<BigInt> = ex.iter().zip(&ey).map(|(a, b)| a + b).collect();
        assert_eq!(h.reduce(&sum), h.reduce(&exy));
    }

    #[test]
    fn minor_gcd_matches_snf() {
        let a = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = smith(&a);
        let diag = s.diag();
        let mut prod = BigInt::one();
        for (r, d) in diag.iter().enumerate() {
            if d.is_zero() {
                break;
            }
            prod *= d;
            assert_eq!(minor_gcd(&a, r + 1), prod.clone());
        }
    }
}
