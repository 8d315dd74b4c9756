//! Closed-form reference tables for the C_4 homology of representation
//! spheres: for every sign combination of S^{a sigma + b lambda} these give
//! the Mackey functor name in each degree together with its generators
//! written in Euler and orientation classes.
//!
//! This module is independent of the chain-level engine; its rows are case
//! analyses in (n, m, parity) and act as the oracle the engine is verified
//! against. Generator expressions use the fixture grammar: products and
//! quotients evaluated left to right, parentheses for grouping, integer
//! scalars, `Tr(level, expr)` for a transfer from a lower level. Symbols:
//! as, al, u2s, ul, us, s3, w{odd}, x{odd}_{m}; a symbol evaluated at a
//! level below its home level means its restriction (the bars of the
//! written tables).

use crate::catalog::render_sum;
use std::collections::BTreeMap;

/// One generator expression at a given level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenExpr {
    pub level: u32,
    pub expr: String,
}

/// One nonzero degree of a homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub degree: i64,
    pub name: String,
    pub gens: Vec<GenExpr>,
}

fn ge(level: u32, expr: impl Into<String>) -> GenExpr {
    GenExpr { level, expr: expr.into() }
}

/// "name^k" with the power dropped when k = 1, empty when k = 0.
fn pow(name: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{}^{}", name, k),
    }
}

/// Product of factors, skipping empty ones; "1" for an empty product.
fn prod(parts: &[String]) -> String {
    let nz: Vec<&str> = parts.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    if nz.is_empty() {
        "1".to_string()
    } else {
        nz.join("*")
    }
}

/// num / den, parenthesizing multi-factor denominators.
fn quot(num: String, den_parts: &[String]) -> String {
    let nz: Vec<&str> =
        den_parts.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    match nz.len() {
        0 => num,
        1 => format!("{}/{}", num, nz[0]),
        _ => format!("{}/({})", num, nz.join("*")),
    }
}

/// Accumulates direct summands per degree.
#[derive(Default)]
struct Parts {
    map: BTreeMap<i64, Vec<(&'static str, Vec<GenExpr>)>>,
}

impl Parts {
    fn add(&mut self, degree: i64, name: &'static str, gens: Vec<GenExpr>) {
        self.map.entry(degree).or_default().push((name, gens));
    }

    fn rows(self) -> Vec<TableRow> {
        self.map
            .into_iter()
            .map(|(degree, parts)| {
                let names: Vec<&str> = parts.iter().map(|p| p.0).collect();
                let name = render_sum(&names);
                // order generator list like the rendered sum
                let mut indexed: Vec<(usize, &(&str, Vec<GenExpr>))> =
                    parts.iter().enumerate().map(|(i, p)| (i, p)).collect();
                let rendered = name.clone();
                indexed.sort_by_key(|(_, p)| {
                    rendered.find(p.0).unwrap_or(usize::MAX)
                });
                let gens = indexed.into_iter().flat_map(|(_, p)| p.1.clone()).collect();
                TableRow { degree, name, gens }
            })
            .collect()
    }
}

/// All nonzero rows of H_*(S^{a sigma + b lambda}) over C_4, from the
/// result tables, for any signs of a and b.
pub fn c4_rows(a: i64, b: i64) -> Vec<TableRow> {
    if a >= 0 && b >= 0 {
        positive_rows(a, b)
    } else if a <= 0 && b <= 0 {
        negative_rows(-a, -b)
    } else if a < 0 {
        lambda_minus_sigma_rows(-a, b)
    } else {
        sigma_minus_lambda_rows(a, -b)
    }
}

/// S^{n sigma + m lambda}, n, m >= 0.
fn positive_rows(n: i64, m: i64) -> Vec<TableRow> {
    let mut out = Parts::default();
    if n == 0 && m == 0 {
        out.add(0, "Z", vec![ge(2, "1"), ge(1, "1"), ge(0, "1")]);
        return out.rows();
    }
    if n % 2 == 0 {
        let top = prod(&[pow("u2s", n / 2), pow("ul", m)]);
        let low = prod(&[pow("us", n), pow("ul", m)]);
        out.add(n + 2 * m, "Z", vec![ge(2, top), ge(1, low.clone()), ge(0, low)]);
        for i in 0..m {
            let top = prod(&[pow("u2s", n / 2), pow("al", m - i), pow("ul", i)]);
            let mid = prod(&[pow("us", n), pow("al", m - i), pow("ul", i)]);
            out.add(n + 2 * i, "<Z/4>", vec![ge(2, top), ge(1, mid)]);
        }
        for i in 0..n / 2 {
            let top = prod(&[pow("as", n - 2 * i), pow("u2s", i), pow("al", m)]);
            out.add(2 * i, "<Z/2>", vec![ge(2, top)]);
        }
    } else {
        let low = prod(&[pow("us", n), pow("ul", m)]);
        out.add(n + 2 * m, "Z-", vec![ge(1, low.clone()), ge(0, low)]);
        for i in 0..m {
            let mid = prod(&[pow("us", n), pow("al", m - i), pow("ul", i)]);
            out.add(n + 2 * i, "bar<Z/2>", vec![ge(1, mid)]);
        }
        for i in 0..=(n - 1) / 2 {
            let top = prod(&[pow("as", n - 2 * i), pow("u2s", i), pow("al", m)]);
            out.add(2 * i, "<Z/2>", vec![ge(2, top)]);
        }
        for i in 1..=m {
            let top =
                prod(&[pow("as", 1), pow("u2s", (n - 1) / 2), pow("al", m - i), pow("ul", i)]);
            out.add(n + 2 * i - 1, "<Z/2>", vec![ge(2, top)]);
        }
    }
    out.rows()
}

/// S^{-n sigma - m lambda}, n, m >= 0, not both zero.
fn negative_rows(n: i64, m: i64) -> Vec<TableRow> {
    let mut out = Parts::default();
    if n % 2 == 0 {
        if m > 0 {
            let top = quot("4".into(), &[pow("u2s", n / 2), pow("ul", m)]);
            let mid = quot("2".into(), &[pow("us", n), pow("ul", m)]);
            let bot = quot("1".into(), &[pow("us", n), pow("ul", m)]);
            out.add(-n - 2 * m, "L", vec![ge(2, top), ge(1, mid), ge(0, bot)]);
        } else {
            let top = quot("2".into(), &[pow("u2s", n / 2)]);
            let low = quot("1".into(), &[pow("us", n)]);
            out.add(-n, "p*L", vec![ge(2, top), ge(1, low.clone()), ge(0, low)]);
        }
        for i in 2..=m {
            let top =
                quot("s3".into(), &[pow("u2s", n / 2), pow("al", i - 2), pow("ul", m - i)]);
            let mid = quot("s3".into(), &[pow("us", n), pow("al", i - 2), pow("ul", m - i)]);
            out.add(-n - 2 * m + 2 * i - 3, "<Z/4>", vec![ge(2, top), ge(1, mid)]);
        }
        if m > 0 {
            for i in 0..n / 2 {
                let top = quot(
                    format!("x{}_1", 2 * i + 1),
                    &[pow("as", n - 2 * i - 1), pow("al", m - 1)],
                );
                out.add(-2 * i - 3, "<Z/2>", vec![ge(2, top)]);
            }
        } else {
            for i in 0..(n / 2 - 1).max(0) {
                let top = quot(format!("w{}", 2 * i + 3), &[pow("as", n - 2 * i - 3)]);
                out.add(-2 * i - 3, "<Z/2>", vec![ge(2, top)]);
            }
        }
    } else {
        if m > 0 {
            let mid = quot("2".into(), &[pow("us", n), pow("ul", m)]);
            let bot = quot("1".into(), &[pow("us", n), pow("ul", m)]);
            out.add(
                -n - 2 * m,
                "L-",
                vec![ge(2, format!("x{}_{}", n, m)), ge(1, mid), ge(0, bot)],
            );
        } else if n > 1 {
            let low = quot("1".into(), &[pow("us", n)]);
            out.add(-n, "p*L-", vec![ge(2, format!("w{}", n)), ge(1, low.clone()), ge(0, low)]);
        } else {
            let low = quot("1".into(), &[pow("us", 1)]);
            out.add(-1, "Z-", vec![ge(1, low.clone()), ge(0, low)]);
        }
        for i in 2..=m {
            let mid = quot("s3".into(), &[pow("us", n), pow("al", i - 2), pow("ul", m - i)]);
            out.add(-n - 2 * m + 2 * i - 3, "bar<Z/2>", vec![ge(1, mid)]);
        }
        // <Z/2> at every odd degree strictly between -n-2m and -1
        let mut k = -n - 2 * m + 2;
        while k < -1 {
            let expr = if m == 0 {
                let i = (-k - 3) / 2;
                quot(format!("w{}", 2 * i + 3), &[pow("as", n - 2 * i - 3)])
            } else if k >= -n - 2 {
                let i = (-k - 3) / 2;
                quot(format!("x{}_1", 2 * i + 1), &[pow("as", n - 2 * i - 1), pow("al", m - 1)])
            } else {
                let i = (k + n + 2 * m + 2) / 2;
                quot(
                    "2*s3".into(),
                    &[pow("as", 1), pow("u2s", (n - 1) / 2), pow("al", i - 2), pow("ul", m - i)],
                )
            };
            out.add(k, "<Z/2>", vec![ge(2, expr)]);
            k += 2;
        }
    }
    out.rows()
}

/// S^{m lambda - n sigma}, n, m >= 1.
fn lambda_minus_sigma_rows(n: i64, m: i64) -> Vec<TableRow> {
    assert!(n >= 1 && m >= 1);
    let mut out = Parts::default();
    if n % 2 == 0 {
        let top = quot(pow("ul", m), &[pow("u2s", n / 2)]);
        let low = quot(pow("ul", m), &[pow("us", n)]);
        out.add(2 * m - n, "Z", vec![ge(2, top), ge(1, low.clone()), ge(0, low)]);
        for i in 1..m {
            let top = quot(prod(&[pow("al", i), pow("ul", m - i)]), &[pow("u2s", n / 2)]);
            let mid = quot(prod(&[pow("al", i), pow("ul", m - i)]), &[pow("us", n)]);
            out.add(2 * m - n - 2 * i, "<Z/4>", vec![ge(2, top), ge(1, mid)]);
        }
        for i in 1..n / 2 {
            let top = quot(
                prod(&[format!("w{}", 2 * i + 1), pow("al", m)]),
                &[pow("as", n - 2 * i - 1)],
            );
            out.add(-2 * i - 1, "<Z/2>", vec![ge(2, top)]);
        }
        let top = quot(prod(&["2".into(), pow("al", m)]), &[pow("u2s", n / 2)]);
        let mid = quot(pow("al", m), &[pow("us", n)]);
        out.add(-n, "Q", vec![ge(2, top), ge(1, mid)]);
    } else {
        // the Z- class at the top degree
        let zl = quot(pow("ul", m), &[pow("us", n)]);
        out.add(2 * m - n, "Z-", vec![ge(1, zl.clone()), ge(0, zl)]);
        // bar<Z/2> band: odd degrees 2m-n-2i for 0 < i < m (for n = 1 also i = m)
        let imax = if n == 1 { m } else { m - 1 };
        for i in 1..=imax {
            let k = 2 * m - n - 2 * i;
            if n >= 3 && k == -n {
                continue; // that slot is the middle of Q
            }
            let mid = quot(prod(&[pow("al", i), pow("ul", m - i)]), &[pow("us", n)]);
            out.add(k, "bar<Z/2>", vec![ge(1, mid)]);
        }
        // w-family <Z/2> at every odd degree in [-n+2, -3]; at 2m-n it is the
        // summand next to Z-, below 2m-n it pairs with the bar band
        if n >= 3 {
            for i in 1..=(n - 3) / 2 {
                let k = -2 * i - 1;
                let top = quot(
                    prod(&[format!("w{}", 2 * i + 1), pow("al", m)]),
                    &[pow("as", n - 2 * i - 1)],
                );
                out.add(k, "<Z/2>", vec![ge(2, top)]);
            }
        }
        // even degrees: 2m-n-2i+1 for 1 <= i <= m, within [-n+1, 2m-n)
        for i in 1..=m {
            let k = 2 * m - n - 2 * i + 1;
            if k < -n + 1 {
                break;
            }
            let top = quot(
                prod(&["2".into(), pow("al", i), pow("ul", m - i)]),
                &[pow("as", 1), pow("u2s", (n - 1) / 2)],
            );
            out.add(k, "<Z/2>", vec![ge(2, top)]);
        }
        // Q at -n for n >= 3; for n = 1 the -1 slot is bar<Z/2> (i = m above)
        if n >= 3 {
            let top = prod(&[format!("w{}", n), pow("al", m)]);
            let mid = quot(pow("al", m), &[pow("us", n)]);
            out.add(-n, "Q", vec![ge(2, top), ge(1, mid)]);
        }
    }
    out.rows()
}

/// S^{n sigma - m lambda}, n, m >= 1.
fn sigma_minus_lambda_rows(n: i64, m: i64) -> Vec<TableRow> {
    assert!(n >= 1 && m >= 1);
    let mut out = Parts::default();
    if n % 2 == 0 {
        if m >= 2 {
            let top = quot(prod(&[pow("u2s", n / 2), "s3".into()]), &[pow("al", m - 2)]);
            let mid = quot(prod(&[pow("us", n), "s3".into()]), &[pow("al", m - 2)]);
            out.add(n - 3, "Q#", vec![ge(2, top), ge(1, mid)]);
        }
        for i in 2..m {
            // u2s^{n/2} * (s3/(al^{i-2} ul^{m-i})): multiplication after the
            // division; the other order gives the mod 2 reduction
            let inner = quot("s3".into(), &[pow("al", i - 2), pow("ul", m - i)]);
            let top = if n == 0 { inner.clone() } else { format!("{}*({})", pow("u2s", n / 2), inner) };
            let mid =
                quot(prod(&[pow("us", n), "s3".into()]), &[pow("al", i - 2), pow("ul", m - i)]);
            out.add(n - 2 * m + 2 * i - 3, "<Z/4>", vec![ge(2, top), ge(1, mid)]);
        }
        if m >= 2 {
            let mid = quot(prod(&["2".into(), pow("us", n)]), &[pow("ul", m)]);
            let bot = quot(pow("us", n), &[pow("ul", m)]);
            if n - 2 * m >= 0 {
                let top = format!("Tr(1,{})", mid);
                out.add(n - 2 * m, "L", vec![ge(2, top), ge(1, mid), ge(0, bot)]);
            } else {
                let top = quot(prod(&["4".into(), pow("u2s", n / 2)]), &[pow("ul", m)]);
                out.add(n - 2 * m, "L", vec![ge(2, top), ge(1, mid), ge(0, bot)]);
            }
        } else {
            let top = quot(prod(&["2".into(), pow("u2s", n / 2)]), &[pow("ul", 1)]);
            let mid = quot(prod(&["2".into(), pow("us", n)]), &[pow("ul", 1)]);
            let bot = quot(pow("us", n), &[pow("ul", 1)]);
            out.add(n - 2, "L#", vec![ge(2, top), ge(1, mid), ge(0, bot)]);
        }
        // <Z/2> at even degrees 0..n-4 (the n-2m slot becomes the summand)
        for i in 0..=(n - 4) / 2 {
            let k = 2 * i;
            if n < 4 {
                break;
            }
            let top = quot(prod(&[pow("as", n - 2 * i), pow("u2s", i)]), &[pow("al", m)]);
            out.add(k, "<Z/2>", vec![ge(2, top)]);
        }
    } else {
        if n >= 3 && m >= 2 {
            let top = quot(prod(&[pow("as", 3), pow("u2s", (n - 3) / 2)]), &[pow("al", m)]);
            let mid = quot(prod(&[pow("us", n), "s3".into()]), &[pow("al", m - 2)]);
            out.add(n - 3, "Q#", vec![ge(2, top), ge(1, mid)]);
        }
        // odd <Z/2> band: degrees n-4-2j for 0 <= j <= m-3
        for j in 0..=m - 3 {
            if m < 3 {
                break;
            }
            let k = n - 4 - 2 * j;
            let top = quot(
                prod(&[pow("as", 1), pow("u2s", (n - 1) / 2), "s3".into()]),
                &[pow("al", j), pow("ul", m - 2 - j)],
            );
            out.add(k, "<Z/2>", vec![ge(2, top)]);
        }
        // even <Z/2> band: degrees 0..n-5, extended to n-2m-1 when that is
        // larger (below the torsion-free class everything is standalone)
        let top_even = (n - 5).max(n - 2 * m - 1);
        for i in 0..=top_even / 2 {
            if top_even < 0 {
                break;
            }
            let top = quot(prod(&[pow("as", n - 2 * i), pow("u2s", i)]), &[pow("al", m)]);
            out.add(2 * i, "<Z/2>", vec![ge(2, top)]);
        }
        // bar<Z/2> band: even degrees n-2m+1+2j; for n = 1 it runs up to -2
        let jmax = if n == 1 { m - 2 } else { m - 3 };
        for j in 0..=jmax {
            if jmax < 0 {
                break;
            }
            let k = n - 2 * m + 1 + 2 * j;
            let mid = quot(
                prod(&[pow("us", n), "s3".into()]),
                &[pow("al", j), pow("ul", m - 2 - j)],
            );
            out.add(k, "bar<Z/2>", vec![ge(1, mid)]);
        }
        if m >= 2 {
            let mid = quot(prod(&["2".into(), pow("us", n)]), &[pow("ul", m)]);
            let bot = quot(pow("us", n), &[pow("ul", m)]);
            let top = format!("Tr(1,{})", mid);
            out.add(n - 2 * m, "L-", vec![ge(2, top), ge(1, mid), ge(0, bot)]);
        } else {
            let mid = quot(prod(&["2".into(), pow("us", n)]), &[pow("ul", 1)]);
            let bot = quot(pow("us", n), &[pow("ul", 1)]);
            out.add(n - 2, "Z-b", vec![ge(1, mid), ge(0, bot)]);
        }
    }
    out.rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(a: i64, b: i64) -> Vec<(i64, String)> {
        c4_rows(a, b).into_iter().map(|r| (r.degree, r.name)).collect()
    }

    fn s(v: &str) -> String {
        v.to_string()
    }

    #[test]
    fn sphere_of_nothing() {
        assert_eq!(names(0, 0), vec![(0, s("Z"))]);
    }

    #[test]
    fn known_spot_checks() {
        assert_eq!(names(2, 1), vec![(0, s("<Z/2>")), (2, s("<Z/4>")), (4, s("Z"))]);
        assert_eq!(
            names(1, 1),
            vec![(0, s("<Z/2>")), (1, s("bar<Z/2>")), (2, s("<Z/2>")), (3, s("Z-"))]
        );
        assert_eq!(names(0, -2), vec![(-4, s("L")), (-3, s("<Z/4>"))]);
        assert_eq!(names(-1, 0), vec![(-1, s("Z-"))]);
        assert_eq!(names(-3, 0), vec![(-3, s("p*L-"))]);
        assert_eq!(names(4, -2), vec![(0, s("L+<Z/2>")), (1, s("Q#"))]);
        assert_eq!(names(2, -1), vec![(0, s("L#"))]);
        assert_eq!(names(1, -2), vec![(-3, s("L-")), (-2, s("bar<Z/2>"))]);
        assert_eq!(names(-2, 1), vec![(-2, s("Q")), (0, s("Z"))]);
        assert_eq!(
            names(-5, 1),
            vec![(-5, s("Q")), (-4, s("<Z/2>")), (-3, s("Z-+<Z/2>"))]
        );
        assert_eq!(names(1, -1), vec![(-1, s("Z-b"))]);
        assert_eq!(names(-1, 1), vec![(-1, s("bar<Z/2>")), (0, s("<Z/2>")), (1, s("Z-"))]);
    }

    #[test]
    fn lambda_minus_sigma_odd_bands() {
        assert_eq!(
            names(-5, 2),
            vec![
                (-5, s("Q")),
                (-4, s("<Z/2>")),
                (-3, s("<Z/2>+bar<Z/2>")),
                (-2, s("<Z/2>")),
                (-1, s("Z-")),
            ]
        );
        assert_eq!(
            names(-3, 1),
            vec![(-3, s("Q")), (-2, s("<Z/2>")), (-1, s("Z-"))]
        );
    }

    #[test]
    fn sigma_minus_lambda_odd_bands() {
        assert_eq!(
            names(5, -3),
            vec![
                (-1, s("L-")),
                (0, s("<Z/2>+bar<Z/2>")),
                (1, s("<Z/2>")),
                (2, s("Q#")),
            ]
        );
        assert_eq!(
            names(1, -3),
            vec![(-5, s("L-")), (-4, s("bar<Z/2>")), (-3, s("<Z/2>")), (-2, s("bar<Z/2>"))]
        );
        assert_eq!(names(3, -2), vec![(-1, s("L-")), (0, s("Q#"))]);
    }

    #[test]
    fn no_duplicate_summands() {
        for a in -7..=7 {
            for b in -7..=7 {
                for r in c4_rows(a, b) {
                    assert!(!r.name.is_empty());
                    assert!(!r.gens.is_empty(), "({},{}) deg {}", a, b, r.degree);
                }
            }
        }
    }
}
