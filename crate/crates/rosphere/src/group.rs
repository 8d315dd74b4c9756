//! The cyclic group C_{p^n}: subgroup chain, real irreducibles, virtual
//! representations (the RO(G) grading lattice), and orbit arithmetic.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The ambient group C_{p^n}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Group {
    pub prime: u32,
    pub exponent: u32,
}

/// Subgroup of order p^level. Subgroups of a cyclic p-group form a chain,
/// so the order exponent identifies them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Level(pub u32);

impl Group {
    pub fn new(prime: u32, exponent: u32) -> Result<Group, crate::Error> {
        if prime < 2 || !is_prime(prime) {
            return Err(crate::Error::BadGroup(format!("{} is not prime", prime)));
        }
        let order = (prime as u64).checked_pow(exponent);
        match order {
            Some(o) if o <= 1 << 20 => Ok(Group { prime, exponent }),
            _ => Err(crate::Error::BadGroup(format!(
                "group order {}^{} too large",
                prime, exponent
            ))),
        }
    }

    pub fn c4() -> Group {
        Group { prime: 2, exponent: 2 }
    }

    pub fn order(&self) -> u64 {
        (self.prime as u64).pow(self.exponent)
    }

    pub fn top_level(&self) -> Level {
        Level(self.exponent)
    }

    pub fn levels(&self) -> impl Iterator<Item = Level> {
        (0..=self.exponent).map(Level)
    }

    pub fn subgroup_order(&self, l: Level) -> u64 {
        assert!(l.0 <= self.exponent);
        (self.prime as u64).pow(l.0)
    }

    /// |G/H| for the subgroup of order p^level.
    pub fn orbit_size(&self, stab: Level) -> u64 {
        self.order() / self.subgroup_order(stab)
    }

    /// Real irreducibles available for this group (besides the trivial one).
    pub fn irreducibles(&self) -> Vec<Irrep> {
        let mut out = Vec::new();
        if self.prime == 2 && self.exponent >= 1 {
            out.push(Irrep::Sign);
        }
        let kmin = if self.prime == 2 { 2 } else { 1 };
        for k in kmin..=self.exponent {
            out.push(Irrep::Rotation(k));
        }
        out
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Nontrivial irreducible real representations of C_{p^n}: the sign
/// representation (p = 2 only) and the rotations by 2*pi/p^k.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Irrep {
    Sign,
    Rotation(u32),
}

impl Irrep {
    pub fn dim(&self) -> i64 {
        match self {
            Irrep::Sign => 1,
            Irrep::Rotation(_) => 2,
        }
    }

    /// Isotropy subgroup: kernel of the representation.
    pub fn stabilizer(&self, g: Group) -> Level {
        match self {
            Irrep::Sign => {
                assert_eq!(g.prime, 2, "sign representation needs p = 2");
                Level(g.exponent - 1)
            }
            Irrep::Rotation(k) => {
                assert!(*k >= 1 && *k <= g.exponent, "lambda_{} out of range", k);
                if g.prime == 2 {
                    assert!(*k >= 2, "lambda_1 is not irreducible for p = 2");
                }
                Level(g.exponent - k)
            }
        }
    }

    pub fn valid_for(&self, g: Group) -> bool {
        match self {
            Irrep::Sign => g.prime == 2 && g.exponent >= 1,
            Irrep::Rotation(k) => {
                *k >= 1 && *k <= g.exponent && (g.prime != 2 || *k >= 2)
            }
        }
    }
}

/// A point of the RO(C_{p^n}) grading lattice: integer multiplicities of the
/// irreducibles, possibly negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct VirtualRep {
    pub trivial: i64,
    pub sign: i64,
    pub rotations: BTreeMap<u32, i64>,
}

impl VirtualRep {
    pub fn zero() -> VirtualRep {
        VirtualRep::default()
    }

    pub fn trivial(n: i64) -> VirtualRep {
        VirtualRep { trivial: n, ..Default::default() }
    }

    pub fn sigma(n: i64) -> VirtualRep {
        VirtualRep { sign: n, ..Default::default() }
    }

    /// n * lambda_k.
    pub fn lambda_k(k: u32, n: i64) -> VirtualRep {
        let mut rot = BTreeMap::new();
        if n != 0 {
            rot.insert(k, n);
        }
        VirtualRep { trivial: 0, sign: 0, rotations: rot }
    }

    /// For C_4 convenience: n*sigma + m*lambda.
    pub fn c4(n: i64, m: i64) -> VirtualRep {
        &VirtualRep::sigma(n) + &VirtualRep::lambda_k(2, m)
    }

    pub fn dim(&self) -> i64 {
        self.trivial + self.sign + 2 * self.rotations.values().sum::<i64>()
    }

    pub fn is_zero(&self) -> bool {
        self.trivial == 0 && self.sign == 0 && self.rotations.values().all(|&v| v == 0)
    }

    pub fn is_actual(&self) -> bool {
        self.trivial >= 0 && self.sign >= 0 && self.rotations.values().all(|&v| v >= 0)
    }

    pub fn normalized(mut self) -> VirtualRep {
        self.rotations.retain(|_, v| *v != 0);
        self
    }

    pub fn neg(&self) -> VirtualRep {
        VirtualRep {
            trivial: -self.trivial,
            sign: -self.sign,
            rotations: self.rotations.iter().map(|(&k, &v)| (k, -v)).collect(),
        }
        .normalized()
    }

    /// Multiplicity of a given irreducible.
    pub fn mult(&self, irr: Irrep) -> i64 {
        match irr {
            Irrep::Sign => self.sign,
            Irrep::Rotation(k) => self.rotations.get(&k).copied().unwrap_or(0),
        }
    }

    pub fn valid_for(&self, g: Group) -> bool {
        (self.sign == 0 || Irrep::Sign.valid_for(g))
            && self.rotations.iter().all(|(&k, &v)| v == 0 || Irrep::Rotation(k).valid_for(g))
    }

    /// Nontrivial irreducible content as (irrep, multiplicity) pairs.
    pub fn irreps(&self) -> Vec<(Irrep, i64)> {
        let mut out = Vec::new();
        if self.sign != 0 {
            out.push((Irrep::Sign, self.sign));
        }
        for (&k, &v) in &self.rotations {
            if v != 0 {
                out.push((Irrep::Rotation(k), v));
            }
        }
        out
    }

    /// Canonical decomposition v = plus - minus with both actual and
    /// disjointly supported.
    pub fn split(&self) -> (VirtualRep, VirtualRep) {
        let mut plus = VirtualRep::zero();
        let mut minus = VirtualRep::zero();
        if self.trivial >= 0 {
            plus.trivial = self.trivial;
        } else {
            minus.trivial = -self.trivial;
        }
        if self.sign >= 0 {
            plus.sign = self.sign;
        } else {
            minus.sign = -self.sign;
        }
        for (&k, &v) in &self.rotations {
            if v > 0 {
                plus.rotations.insert(k, v);
            } else if v < 0 {
                minus.rotations.insert(k, -v);
            }
        }
        (plus, minus)
    }
}

impl std::ops::Add for &VirtualRep {
    type Output = VirtualRep;
    fn add(self, rhs: &VirtualRep) -> VirtualRep {
        let mut rot = self.rotations.clone();
        for (&k, &v) in &rhs.rotations {
            *rot.entry(k).or_insert(0) += v;
        }
        VirtualRep {
            trivial: self.trivial + rhs.trivial,
            sign: self.sign + rhs.sign,
            rotations: rot,
        }
        .normalized()
    }
}

impl std::ops::Sub for &VirtualRep {
    type Output = VirtualRep;
    fn sub(self, rhs: &VirtualRep) -> VirtualRep {
        self + &rhs.neg()
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        if self.trivial != 0 {
            terms.push((self.trivial, String::new()));
        }
        if self.sign != 0 {
            terms.push((self.sign, "sigma".to_string()));
        }
        for (&k, &v) in &self.rotations {
            if v != 0 {
                terms.push((v, format!("lambda{}", k)));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, (c, name)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            s.push_str(sign);
            if name.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(name);
            } else {
                s.push_str(&format!("{}*{}", mag, name));
            }
        }
        write!(f, "{}", s)
    }
}

/// Orbit product: G/H x G/K decomposes as copies of a single orbit since
/// subgroups of C_{p^n} form a chain. Returns (stabilizer level, copies).
pub fn orbit_product(h: Level, k: Level, g: Group) -> (Level, u64) {
    assert!(h.0 <= g.exponent && k.0 <= g.exponent);
    let orbit = Level(h.0.min(k.0));
    let copies = g.order() * g.subgroup_order(orbit) / (g.subgroup_order(h) * g.subgroup_order(k));
    (orbit, copies)
}

/// Parse the text syntax for virtual representations: e.g. "3*sigma-2*lambda",
/// "1+2*sigma", "-lambda2". "lambda" without an index means the faithful
/// rotation lambda_n. Whitespace-insensitive.
pub fn parse_virtual(input: &str, g: Group) -> Result<VirtualRep, crate::Error> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0usize;
    let mut out = VirtualRep::zero();

    let err = |pos: usize, msg: &str| crate::Error::Parse { pos, msg: msg.to_string() };

    fn skip_ws(chars: &[char], pos: &mut usize) {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    }

    skip_ws(&chars, &mut pos);
    if pos == chars.len() {
        return Err(err(0, "empty representation"));
    }
    let mut first = true;
    while pos < chars.len() {
        skip_ws(&chars, &mut pos);
        if pos == chars.len() {
            break;
        }
        // sign
        let mut sign = 1i64;
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -1;
            }
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected '+' or '-' between terms"));
        }
        first = false;
        skip_ws(&chars, &mut pos);
        // optional integer
        let mut digits = String::new();
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            digits.push(chars[pos]);
            pos += 1;
        }
        let coeff: i64 = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| err(pos, "coefficient out of range"))?
        };
        skip_ws(&chars, &mut pos);
        // optional '*'
        let had_star = pos < chars.len() && chars[pos] == '*';
        if had_star {
            pos += 1;
            skip_ws(&chars, &mut pos);
        }
        // optional name
        let name_start = pos;
        let mut name = String::new();
        while pos < chars.len() && chars[pos].is_ascii_alphabetic() {
            name.push(chars[pos]);
            pos += 1;
        }
        let mut idx = String::new();
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            idx.push(chars[pos]);
            pos += 1;
        }
        let term = if name.is_empty() {
            if had_star {
                return Err(err(pos, "expected representation name after '*'"));
            }
            if digits.is_empty() {
                return Err(err(pos, "expected a term"));
            }
            VirtualRep::trivial(sign * coeff)
        } else {
            match name.as_str() {
                "sigma" | "s" => {
                    if !idx.is_empty() {
                        return Err(err(name_start, "sigma takes no index"));
                    }
                    if !Irrep::Sign.valid_for(g) {
                        return Err(err(name_start, "sigma requires p = 2"));
                    }
                    VirtualRep::sigma(sign * coeff)
                }
                "lambda" | "l" => {
                    let k = if idx.is_empty() {
                        g.exponent
                    } else {
                        idx.parse().map_err(|_| err(name_start, "bad lambda index"))?
                    };
                    if !Irrep::Rotation(k).valid_for(g) {
                        return Err(err(name_start, "lambda index out of range for this group"));
                    }
                    VirtualRep::lambda_k(k, sign * coeff)
                }
                _ => return Err(err(name_start, "unknown representation name")),
            }
        };
        out = &out + &term;
    }
    Ok(out.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_products_c4() {
        let g = Group::c4();
        // identity orbit
        assert_eq!(orbit_product(Level(2), Level(2), g), (Level(2), 1));
        // free x middle
        assert_eq!(orbit_product(Level(0), Level(1), g), (Level(0), 2));
        // middle x middle
        assert_eq!(orbit_product(Level(1), Level(1), g), (Level(1), 2));
    }

    /// Brute-force oracle: decompose G/H x G/K into diagonal orbits.
    fn orbit_decompose(g: Group, h: Level, k: Level) -> (u64, u64) {
        let n = g.order();
        let rh = g.orbit_size(h);
        let rk = g.orbit_size(k);
        let mut seen = vec![false; (rh * rk) as usize];
        let mut orbits = Vec::new();
        for a in 0..rh {
            for b in 0..rk {
                let idx = (a * rk + b) as usize;
                if seen[idx] {
                    continue;
                }
                let mut size = 0u64;
                for t in 0..n {
                    let ia = (a + t) % rh;
                    let ib = (b + t) % rk;
                    let i = (ia * rk + ib) as usize;
                    if !seen[i] {
                        seen[i] = true;
                        size += 1;
                    }
                }
                orbits.push(size);
            }
        }
        let size = orbits[0];
        assert!(orbits.iter().all(|&s| s == size));
        (orbits.len() as u64, size)
    }

    #[test]
    fn orbit_product_matches_bruteforce() {
        for (p, n) in [(2u32, 2u32), (2, 3), (3, 1), (2, 4)] {
            if (p as u64).pow(n) > 16 {
                continue;
            }
            let g = Group::new(p, n).unwrap();
            for h in 0..=n {
                for k in 0..=n {
                    let (orb, copies) = orbit_product(Level(h), Level(k), g);
                    let (bcopies, bsize) = orbit_decompose(g, Level(h), Level(k));
                    assert_eq!(copies, bcopies, "copies p={} n={} h={} k={}", p, n, h, k);
                    assert_eq!(g.orbit_size(orb), bsize);
                    // cardinality conservation
                    assert_eq!(copies * g.orbit_size(orb), g.orbit_size(Level(h)) * g.orbit_size(Level(k)));
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        let v = VirtualRep::c4(3, -2);
        let (p, m) = v.split();
        assert_eq!(p, VirtualRep::sigma(3));
        assert_eq!(m, VirtualRep::lambda_k(2, 2));
        assert_eq!(&p - &m, v);

        let v = VirtualRep::c4(-1, -1);
        let (p, m) = v.split();
        assert!(p.is_zero());
        assert_eq!(m, VirtualRep::c4(1, 1));

        let v = &VirtualRep::trivial(2) + &VirtualRep::sigma(1);
        let (p, m) = v.split();
        assert_eq!(p, v);
        assert!(m.is_zero());
    }

    #[test]
    fn parse_roundtrip() {
        let g = Group::c4();
        for s in ["3*sigma-2*lambda", "1+2*sigma", "-lambda2", "0", "sigma - lambda + 4"] {
            let v = parse_virtual(s, g).unwrap();
            let v2 = parse_virtual(&v.to_string(), g).unwrap();
            assert_eq!(v, v2, "roundtrip {}", s);
        }
        assert_eq!(parse_virtual("3*sigma-2*lambda", g).unwrap(), VirtualRep::c4(3, -2));
        assert_eq!(parse_virtual(" - lambda2 ", g).unwrap(), VirtualRep::c4(0, -1));
    }

    #[test]
    fn parse_errors_carry_position() {
        let g = Group::c4();
        match parse_virtual("2*tau", g) {
            Err(crate::Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {:?}", other.map(|v| v.to_string())),
        }
        assert!(parse_virtual("", g).is_err());
        assert!(parse_virtual("lambda9", g).is_err());
    }
}
