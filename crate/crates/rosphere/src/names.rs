//! Naming generators in Euler and orientation classes.
//!
//! The factorization algorithm forms multiplication-by-named-class maps on
//! every homology slot of a grading box, turns them into a two-colored
//! graph (multiply edges and divide edges), and breadth-first searches it
//! from the named classes and their transfers. Every reachable element gets
//! a shortest expression; unreachable generators are reported (for the
//! integral C_4 homology these are exactly the s_3 family, unless s_3 is
//! adjoined as an extra seed).
//!
//! Expressions are sequences of multiply/divide steps evaluated left to
//! right, with an optional final transfer; the ordered form matters, since
//! x * (y/z) and (x*y)/z can differ.

use crate::green::{Element, Engine};
use crate::group::VirtualRep;
use crate::zlinalg::IntMat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

/// The named classes of the C_4 story (with their home levels).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sym {
    ASigma,
    U2Sigma,
    USigma,
    ALambda,
    ULambda,
    S3,
    W(i64),
    X(i64, i64),
}

impl Sym {
    pub fn text(&self) -> String {
        match self {
            Sym::ASigma => "as".into(),
            Sym::U2Sigma => "u2s".into(),
            Sym::USigma => "us".into(),
            Sym::ALambda => "al".into(),
            Sym::ULambda => "ul".into(),
            Sym::S3 => "s3".into(),
            Sym::W(n) => format!("w{}", n),
            Sym::X(n, m) => format!("x{}_{}", n, m),
        }
    }

    pub fn home_level(&self) -> u32 {
        match self {
            Sym::USigma => 1,
            _ => 2,
        }
    }

    fn order_key(&self) -> (u8, i64, i64) {
        match self {
            Sym::ASigma => (0, 0, 0),
            Sym::U2Sigma => (1, 0, 0),
            Sym::USigma => (2, 0, 0),
            Sym::ALambda => (3, 0, 0),
            Sym::ULambda => (4, 0, 0),
            Sym::S3 => (5, 0, 0),
            Sym::W(n) => (6, *n, 0),
            Sym::X(n, m) => (7, *n, *m),
        }
    }

    pub fn element(&self, e: &mut Engine) -> Element {
        match self {
            Sym::ASigma => e.a_sigma(),
            Sym::U2Sigma => e.u_2sigma(),
            Sym::USigma => e.u_sigma(),
            Sym::ALambda => e.a_lambda(),
            Sym::ULambda => e.u_lambda(),
            Sym::S3 => e.s3(),
            Sym::W(n) => e.w(*n),
            Sym::X(n, m) => e.x_class(*n, *m),
        }
    }
}

/// One step of an expression, evaluated left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Mul(Sym),
    Div(Sym),
    Scale(i64),
}

/// A named expression for a homology element: steps applied to 1 at `level`,
/// then optionally transferred up.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ClassExpression {
    pub steps: Vec<Step>,
    pub level: u32,
    pub transfer_to: Option<u32>,
}

impl ClassExpression {
    /// Cost for shortest-expression selection: division steps, then total
    /// weight, then symbol order.
    pub fn cost(&self) -> (usize, usize, Vec<(u8, i64, i64)>) {
        let divs = self.steps.iter().filter(|s| matches!(s, Step::Div(_))).count();
        let weight = self.steps.len() + usize::from(self.transfer_to.is_some());
        let syms: Vec<(u8, i64, i64)> = self
            .steps
            .iter()
            .filter_map(|s| match s {
                Step::Mul(x) | Step::Div(x) => Some(x.order_key()),
                Step::Scale(_) => None,
            })
            .collect();
        (divs, weight, syms)
    }

    /// Render in the table style, e.g. "2*s3/(as*u2s)" or "Tr(1,2*us/ul^2)".
    pub fn render(&self) -> String {
        let mut num: Vec<(String, u32)> = Vec::new();
        let mut den: Vec<(String, u32)> = Vec::new();
        let mut scalar = 1i64;
        let mut pure_quotient = true;
        let mut seen_div = false;
        for s in &self.steps {
            match s {
                Step::Scale(c) => {
                    scalar *= c;
                    if seen_div {
                        pure_quotient = false;
                    }
                }
                Step::Mul(x) => {
                    if seen_div {
                        pure_quotient = false;
                    }
                    push_pow(&mut num, x.text());
                }
                Step::Div(x) => {
                    seen_div = true;
                    push_pow(&mut den, x.text());
                }
            }
        }
        let body = if pure_quotient {
            render_quotient(scalar, &num, &den)
        } else {
            let mut parts = Vec::new();
            for s in &self.steps {
                match s {
                    Step::Scale(c) => parts.push(format!("*{}", c)),
                    Step::Mul(x) => parts.push(format!("*{}", x.text())),
                    Step::Div(x) => parts.push(format!("/{}", x.text())),
                }
            }
            format!("1{}", parts.concat())
        };
        match self.transfer_to {
            Some(_) => format!("Tr({},{})", self.level, body),
            None => body,
        }
    }
}

fn push_pow(v: &mut Vec<(String, u32)>, name: String) {
    if let Some(last) = v.iter_mut().find(|(n, _)| *n == name) {
        last.1 += 1;
    } else {
        v.push((name, 1));
    }
}

fn render_quotient(scalar: i64, num: &[(String, u32)], den: &[(String, u32)]) -> String {
    let fmt = |v: &[(String, u32)]| -> Vec<String> {
        v.iter()
            .map(|(n, p)| if *p == 1 { n.clone() } else { format!("{}^{}", n, p) })
            .collect()
    };
    let mut nparts = Vec::new();
    if scalar != 1 || num.is_empty() {
        nparts.push(scalar.to_string());
    }
    nparts.extend(fmt(num));
    let nstr = nparts.join("*");
    let dparts = fmt(den);
    match dparts.len() {
        0 => nstr,
        1 => format!("{}/{}", nstr, dparts[0]),
        _ => format!("{}/({})", nstr, dparts.join("*")),
    }
}

// ---------------------------------------------------------------------
// expression parsing and evaluation (fixture grammar)
// ---------------------------------------------------------------------

/// Evaluate a fixture-grammar expression at a level: products and quotients
/// left to right, parentheses, integer scalars, Tr(level, expr). A symbol
/// used below its home level means its restriction.
pub fn eval_expr(e: &mut Engine, input: &str, level: u32) -> crate::Result<Element> {
    let mut p = Parser { chars: input.chars().collect(), pos: 0 };
    let v = p.expr(e, level)?;
    p.ws();
    if p.pos != p.chars.len() {
        return Err(crate::Error::Parse { pos: p.pos, msg: "trailing input".into() });
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self, e: &mut Engine, level: u32) -> crate::Result<Element> {
        let mut acc = self.factor(e, level)?;
        loop {
            self.ws();
            match self.chars.get(self.pos) {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor(e, level)?;
                    acc = e.multiply(&acc, &f);
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor(e, level)?;
                    acc = e.divide(&acc, &f).ok_or_else(|| crate::Error::Parse {
                        pos: self.pos,
                        msg: "division does not exist".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, e: &mut Engine, level: u32) -> crate::Result<Element> {
        self.ws();
        let err = |pos: usize, msg: &str| crate::Error::Parse { pos, msg: msg.to_string() };
        match self.chars.get(self.pos) {
            Some('(') => {
                self.pos += 1;
                let v = self.expr(e, level)?;
                self.ws();
                if self.chars.get(self.pos) != Some(&')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.pos += 1;
                self.maybe_pow(e, v)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(c) = self.chars.get(self.pos) {
                    if c.is_ascii_digit() {
                        digits.push(*c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let n: i64 = digits.parse().map_err(|_| err(self.pos, "bad integer"))?;
                let one = e.unit(level);
                Ok(e.scale(n, &one))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let mut word = String::new();
                while let Some(c) = self.chars.get(self.pos) {
                    if c.is_ascii_alphanumeric() || *c == '_' {
                        word.push(*c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                if word == "Tr" {
                    self.ws();
                    if self.chars.get(self.pos) != Some(&'(') {
                        return Err(err(self.pos, "expected '(' after Tr"));
                    }
                    self.pos += 1;
                    self.ws();
                    let lvl_start = self.pos;
                    let mut digits = String::new();
                    while let Some(c) = self.chars.get(self.pos) {
                        if c.is_ascii_digit() {
                            digits.push(*c);
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    let from: u32 =
                        digits.parse().map_err(|_| err(lvl_start, "bad transfer level"))?;
                    self.ws();
                    if self.chars.get(self.pos) != Some(&',') {
                        return Err(err(self.pos, "expected ',' in Tr"));
                    }
                    self.pos += 1;
                    let inner = self.expr(e, from)?;
                    self.ws();
                    if self.chars.get(self.pos) != Some(&')') {
                        return Err(err(self.pos, "expected ')' closing Tr"));
                    }
                    self.pos += 1;
                    let v = e.tr(&inner, level);
                    return self.maybe_pow(e, v);
                }
                let sym = parse_sym(&word).ok_or_else(|| err(start, "unknown class name"))?;
                if level > sym.home_level() {
                    return Err(err(start, "class used above its home level"));
                }
                let v = {
                    let el = sym.element(e);
                    e.res(&el, level)
                };
                self.maybe_pow(e, v)
            }
            _ => Err(err(self.pos, "expected a factor")),
        }
    }

    fn maybe_pow(&mut self, e: &mut Engine, v: Element) -> crate::Result<Element> {
        self.ws();
        if self.chars.get(self.pos) == Some(&'^') {
            self.pos += 1;
            self.ws();
            let start = self.pos;
            let mut digits = String::new();
            if self.chars.get(self.pos) == Some(&'-') {
                digits.push('-');
                self.pos += 1;
            }
            while let Some(c) = self.chars.get(self.pos) {
                if c.is_ascii_digit() {
                    digits.push(*c);
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let n: i64 = digits
                .parse()
                .map_err(|_| crate::Error::Parse { pos: start, msg: "bad exponent".into() })?;
            return e.power(&v, n).ok_or(crate::Error::Parse {
                pos: start,
                msg: "negative power of a non-invertible class".into(),
            });
        }
        Ok(v)
    }
}

fn parse_sym(word: &str) -> Option<Sym> {
    match word {
        "as" => Some(Sym::ASigma),
        "al" => Some(Sym::ALambda),
        "u2s" => Some(Sym::U2Sigma),
        "ul" => Some(Sym::ULambda),
        "us" => Some(Sym::USigma),
        "s3" => Some(Sym::S3),
        _ => {
            if let Some(rest) = word.strip_prefix('w') {
                rest.parse::<i64>().ok().map(Sym::W)
            } else if let Some(rest) = word.strip_prefix('x') {
                let mut it = rest.splitn(2, '_');
                let n = it.next()?.parse::<i64>().ok()?;
                let m = it.next()?.parse::<i64>().ok()?;
                Some(Sym::X(n, m))
            } else {
                None
            }
        }
    }
}

// ---------------------------------------------------------------------
// factorization graph
// ---------------------------------------------------------------------

/// A slot of the RO(G)-graded homology: (sigma mult, lambda mult, degree, level).
pub type Slot = (i64, i64, i64, u32);

fn slot_of(e: &Element) -> Slot {
    (e.grading.sign, e.grading.rotations.get(&2).copied().unwrap_or(0), e.degree, e.level)
}

fn grading_of_slot(s: &Slot) -> VirtualRep {
    VirtualRep::c4(s.0, s.1)
}

/// Key of a homology element: slot plus reduced coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElemKey {
    pub slot: Slot,
    pub coords: Vec<String>,
}

fn key_of(e: &Element) -> ElemKey {
    ElemKey { slot: slot_of(e), coords: e.coords.iter().map(|c| c.to_string()).collect() }
}

/// Cached multiplication-by-class matrices, so graph edges are matrix
/// applications rather than repeated chain computations.
#[derive(Default)]
pub struct MulTable {
    tables: HashMap<(Slot, Sym), Rc<IntMat>>,
}

impl MulTable {
    pub fn new() -> MulTable {
        MulTable { tables: HashMap::new() }
    }

    pub fn table(&mut self, e: &mut Engine, slot: &Slot, sym: &Sym) -> Rc<IntMat> {
        if let Some(t) = self.tables.get(&(*slot, sym.clone())) {
            return t.clone();
        }
        let grading = grading_of_slot(slot);
        let level = slot.3;
        let class = {
            let el = sym.element(e);
            e.res(&el, level)
        };
        let rank = {
            let p = e.homology(&grading, slot.2);
            p.levels[level as usize].rank()
        };
        let tgrading = (&grading + &class.grading).normalized();
        let tdegree = slot.2 + class.degree;
        let trank = {
            let pt = e.homology(&tgrading, tdegree);
            pt.levels[level as usize].rank()
        };
        let mut m = IntMat::zeros(trank, rank);
        for i in 0..rank {
            let mut coords = vec![BigInt::zero(); rank];
            coords[i] = BigInt::one();
            let gen = Element { grading: grading.clone(), degree: slot.2, level, coords };
            let img = e.multiply(&gen, &class);
            for (j, c) in img.coords.iter().enumerate() {
                m.set(j, i, c.clone());
            }
        }
        let rc = Rc::new(m);
        self.tables.insert((*slot, sym.clone()), rc.clone());
        rc
    }
}

/// Result of the factorization sweep over a grading box.
pub struct Factorization {
    pub expressions: HashMap<ElemKey, ClassExpression>,
    /// generators of homology slots no expression reaches
    pub unreachable: Vec<(Slot, usize)>,
}

impl Factorization {
    pub fn expression_for(&self, e: &Element) -> Option<&ClassExpression> {
        self.expressions.get(&key_of(e))
    }
}

/// Run the factorization over the box |a| <= smax, |b| <= lmax.
/// `adjoin_s3` adds the extension-adjoined generator s_3 as an extra seed.
pub fn factorize(e: &mut Engine, smax: i64, lmax: i64, adjoin_s3: bool) -> Factorization {
    let mut tables = MulTable::new();
    let in_box = |v: &VirtualRep| -> bool {
        v.sign.abs() <= smax
            && v.rotations.get(&2).copied().unwrap_or(0).abs() <= lmax
            && v.trivial == 0
    };

    let edge_syms = [Sym::ASigma, Sym::U2Sigma, Sym::USigma, Sym::ALambda, Sym::ULambda];

    // seeds: the unit, the named classes at all their levels, the transfer
    // classes w_n and x_{n,m} in range, and optionally s_3
    let mut seeds: Vec<(Element, ClassExpression)> = Vec::new();
    for level in 0..=2u32 {
        let one = e.unit(level);
        seeds.push((one, ClassExpression { steps: vec![], level, transfer_to: None }));
    }
    let mut named: Vec<Sym> = edge_syms.to_vec();
    let mut n = 3;
    while n <= smax {
        named.push(Sym::W(n));
        n += 2;
    }
    let mut n = 1;
    while n <= smax {
        for m in 1..=lmax {
            named.push(Sym::X(n, m));
        }
        n += 2;
    }
    if adjoin_s3 {
        named.push(Sym::S3);
    }
    for sym in &named {
        let el = sym.element(e);
        if !in_box(&el.grading) {
            continue;
        }
        for level in (0..=sym.home_level()).rev() {
            let r = e.res(&el, level);
            if r.is_zero() {
                continue;
            }
            seeds.push((
                r,
                ClassExpression { steps: vec![Step::Mul(sym.clone())], level, transfer_to: None },
            ));
        }
    }

    let mut expressions: HashMap<ElemKey, ClassExpression> = HashMap::new();
    let mut queue: VecDeque<Element> = VecDeque::new();
    for (el, expr) in seeds {
        try_insert(&mut expressions, &mut queue, el, expr);
    }

    while let Some(cur) = queue.pop_front() {
        let cur_expr = expressions.get(&key_of(&cur)).cloned().expect("queued without expr");
        let level = cur.level;
        let slot = slot_of(&cur);
        {
            let scaled = e.scale(2, &cur);
            if !scaled.is_zero() {
                let mut expr = cur_expr.clone();
                expr.steps.push(Step::Scale(2));
                try_insert(&mut expressions, &mut queue, scaled, expr);
            }
        }
        for sym in &edge_syms {
            if level > sym.home_level() {
                continue;
            }
            let class = {
                let el = sym.element(e);
                e.res(&el, level)
            };
            // multiply edge, via the cached table
            let tgrading = (&cur.grading + &class.grading).normalized();
            if in_box(&tgrading) {
                let t = tables.table(e, &slot, sym);
                let img = t.apply(&cur.coords);
                let tdegree = cur.degree + class.degree;
                let coords = {
                    let pt = e.homology(&tgrading, tdegree);
                    pt.levels[level as usize].reduce(&img)
                };
                if !coords.iter().all(|c| c.is_zero()) {
                    let el = Element { grading: tgrading, degree: tdegree, level, coords };
                    let mut expr = cur_expr.clone();
                    expr.steps.push(Step::Mul(sym.clone()));
                    try_insert(&mut expressions, &mut queue, el, expr);
                }
            }
            // divide edge
            let dgrading = (&cur.grading - &class.grading).normalized();
            if in_box(&dgrading) {
                if let Some(q) = e.divide(&cur, &class) {
                    if !q.is_zero() {
                        let mut expr = cur_expr.clone();
                        expr.steps.push(Step::Div(sym.clone()));
                        try_insert(&mut expressions, &mut queue, q, expr);
                    }
                }
            }
        }
    }

    // one transfer sweep over everything reached
    let reached: Vec<(ElemKey, ClassExpression)> =
        expressions.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for (k, expr) in reached {
        let level = k.slot.3;
        for up in level + 1..=2 {
            let el = Element {
                grading: grading_of_slot(&k.slot),
                degree: k.slot.2,
                level,
                coords: k.coords.iter().map(|c| c.parse().unwrap()).collect(),
            };
            let t = e.tr(&el, up);
            if t.is_zero() {
                continue;
            }
            let mut te = expr.clone();
            te.transfer_to = Some(up);
            let tk = key_of(&t);
            let better = match expressions.get(&tk) {
                None => true,
                Some(old) => te.cost() < old.cost(),
            };
            if better {
                expressions.insert(tk, te);
            }
        }
    }

    // unreachable generators of every nonzero slot in the box
    let mut unreachable = Vec::new();
    for a in -smax..=smax {
        for b in -lmax..=lmax {
            let grading = VirtualRep::c4(a, b);
            let (lo, hi) = {
                let model = e.canonical_model(&grading);
                (model.lo(), model.hi())
            };
            for k in lo..=hi {
                for level in 0..=2u32 {
                    let rank = {
                        let p = e.homology(&grading, k);
                        p.levels[level as usize].rank()
                    };
                    for i in 0..rank {
                        let mut coords = vec![BigInt::zero(); rank];
                        coords[i] = BigInt::one();
                        let el =
                            Element { grading: grading.clone(), degree: k, level, coords };
                        let known = expressions.contains_key(&key_of(&el)) || {
                            let neg = e.scale(-1, &el);
                            expressions.contains_key(&key_of(&neg))
                        };
                        if !known {
                            unreachable.push(((a, b, k, level), i));
                        }
                    }
                }
            }
        }
    }

    Factorization { expressions, unreachable }
}

fn try_insert(
    expressions: &mut HashMap<ElemKey, ClassExpression>,
    queue: &mut VecDeque<Element>,
    el: Element,
    expr: ClassExpression,
) -> bool {
    if el.is_zero() {
        return false;
    }
    let k = key_of(&el);
    let better = match expressions.get(&k) {
        None => true,
        Some(old) => expr.cost() < old.cost(),
    };
    if better {
        let fresh = expressions.insert(k, expr).is_none();
        if fresh {
            queue.push_back(el);
        }
        true
    } else {
        false
    }
}
