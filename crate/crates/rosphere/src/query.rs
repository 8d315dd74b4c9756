//! Range queries, result records, the persistent result cache, and the
//! rendering used by the command line front end.

use crate::catalog::identify_name;
use crate::fixtures;
use crate::green::Engine;
use crate::group::{parse_virtual, Group, VirtualRep};
use crate::names::factorize;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Task {
    Additive,
    Names,
    Products,
    Relations,
    Massey,
}

impl Task {
    pub fn parse(s: &str) -> crate::Result<Task> {
        match s.trim() {
            "additive" => Ok(Task::Additive),
            "names" => Ok(Task::Names),
            "products" => Ok(Task::Products),
            "relations" => Ok(Task::Relations),
            "massey" => Ok(Task::Massey),
            other => Err(crate::Error::BadQuery(format!("unknown task '{}'", other))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RangeQuery {
    pub group: Group,
    pub modulus: u32,
    pub gradings: Vec<VirtualRep>,
    /// bounding box (smax, lmax) when the query came from --box
    pub bounds: Option<(i64, i64)>,
    pub tasks: BTreeSet<Task>,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
}

impl RangeQuery {
    pub fn sphere(group: Group, expr: &str) -> crate::Result<RangeQuery> {
        let v = parse_virtual(expr, group)?;
        Ok(RangeQuery {
            group,
            modulus: 0,
            gradings: vec![v],
            bounds: None,
            tasks: [Task::Additive].into_iter().collect(),
            cache_dir: None,
            jobs: 1,
        })
    }

    /// Box query "n<=A,m<=B": all gradings a*sigma + b*lambda with
    /// |a| <= A, |b| <= B.
    pub fn boxed(group: Group, spec: &str) -> crate::Result<RangeQuery> {
        let mut smax = 0i64;
        let mut lmax = 0i64;
        for (pos, part) in spec.split(',').enumerate() {
            let part = part.trim().replace(' ', "");
            let (key, value) = part.split_once("<=").ok_or(crate::Error::Parse {
                pos,
                msg: "box bounds look like n<=A,m<=B".into(),
            })?;
            let v: i64 = value.parse().map_err(|_| crate::Error::Parse {
                pos,
                msg: "bad box bound".into(),
            })?;
            match key {
                "n" => smax = v,
                "m" => lmax = v,
                other => {
                    return Err(crate::Error::Parse {
                        pos,
                        msg: format!("unknown box variable '{}'", other),
                    })
                }
            }
        }
        if smax < 0 || lmax < 0 {
            return Err(crate::Error::BadQuery("box bounds must be nonnegative".into()));
        }
        let mut gradings = Vec::new();
        for a in -smax..=smax {
            for b in -lmax..=lmax {
                gradings.push(VirtualRep::c4(a, b));
            }
        }
        Ok(RangeQuery {
            group,
            modulus: 0,
            gradings,
            bounds: Some((smax, lmax)),
            tasks: [Task::Additive].into_iter().collect(),
            cache_dir: None,
            jobs: 1,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResultRecord {
    pub grading: String,
    pub degree: i64,
    pub name: String,
    pub levels: String,
    pub generators: Vec<(u32, String)>,
    pub provenance: String,
}

/// FNV-1a, good enough to key cache files and stamp provenance.
fn fnv1a(data: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn provenance(group: Group, modulus: u32, grading: &VirtualRep) -> String {
    let key = format!(
        "rosphere-{}/C_{}^{}/mod{}/{}",
        crate::ENGINE_VERSION,
        group.prime,
        group.exponent,
        modulus,
        grading
    );
    format!("{:016x}", fnv1a(&key))
}

fn cache_file(dir: &Path, group: Group, modulus: u32, grading: &VirtualRep) -> PathBuf {
    dir.join(format!("{}.json", provenance(group, modulus, grading)))
}

/// Additive records for one grading point (consulting the cache when given).
pub fn additive_records(
    e: &mut Engine,
    grading: &VirtualRep,
    cache_dir: Option<&Path>,
) -> crate::Result<Vec<ResultRecord>> {
    if let Some(dir) = cache_dir {
        let f = cache_file(dir, e.group, e.modulus, grading);
        if f.exists() {
            let text = std::fs::read_to_string(&f)?;
            if let Ok(records) = serde_json::from_str::<Vec<ResultRecord>>(&text) {
                return Ok(records);
            }
        }
    }
    let mut out = Vec::new();
    let (lo, hi) = {
        let model = e.canonical_model(grading);
        (model.lo(), model.hi())
    };
    let is_c4 = e.group == Group::c4() && e.modulus == 0;
    for k in lo..=hi {
        let p = e.homology(grading, k);
        if p.is_zero() {
            continue;
        }
        let name = if is_c4 { identify_name(&p) } else { p.describe_levels() };
        out.push(ResultRecord {
            grading: grading.to_string(),
            degree: k,
            name,
            levels: fixtures::levels_described(e, grading, k),
            generators: vec![],
            provenance: provenance(e.group, e.modulus, grading),
        });
    }
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(dir)?;
        let f = cache_file(dir, e.group, e.modulus, grading);
        let tmp = f.with_extension("tmp");
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(serde_json::to_string_pretty(&out)?.as_bytes())?;
        std::fs::rename(&tmp, &f)?;
    }
    Ok(out)
}

impl From<serde_json::Error> for crate::Error {
    fn from(e: serde_json::Error) -> Self {
        crate::Error::Fixture(format!("json: {}", e))
    }
}

/// Run a query: additive records for every grading (optionally in a worker
/// pool), names attached when requested, ordered by grading then degree.
pub fn run(query: &RangeQuery) -> crate::Result<Vec<ResultRecord>> {
    let mut gradings = query.gradings.clone();
    gradings.sort();
    gradings.dedup();

    let jobs = query.jobs.max(1);
    let mut records: Vec<ResultRecord> = if jobs == 1 || gradings.len() <= 1 {
        let mut e = Engine::new(query.group, query.modulus);
        let mut out = Vec::new();
        for g in &gradings {
            out.extend(additive_records(&mut e, g, query.cache_dir.as_deref())?);
        }
        out
    } else {
        // fan grading points out to a worker pool; each worker owns an engine
        let chunks: Vec<Vec<VirtualRep>> = (0..jobs)
            .map(|w| {
                gradings
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i % jobs == w)
                    .map(|(_, g)| g.clone())
                    .collect()
            })
            .collect();
        let group = query.group;
        let modulus = query.modulus;
        let cache = query.cache_dir.clone();
        let results: Vec<crate::Result<Vec<ResultRecord>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    let cache = cache.clone();
                    scope.spawn(move || {
                        let mut e = Engine::new(group, modulus);
                        let mut out = Vec::new();
                        for g in &chunk {
                            out.extend(additive_records(&mut e, g, cache.as_deref())?);
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut out = Vec::new();
        for r in results {
            out.extend(r?);
        }
        out
    };

    if query.tasks.contains(&Task::Names) {
        let (smax, lmax) = query.bounds.unwrap_or_else(|| {
            let s = gradings.iter().map(|g| g.sign.abs()).max().unwrap_or(0);
            let l = gradings
                .iter()
                .map(|g| g.rotations.get(&2).copied().unwrap_or(0).abs())
                .max()
                .unwrap_or(0);
            (s, l)
        });
        let mut e = Engine::new(query.group, query.modulus);
        let fact = factorize(&mut e, smax, lmax, true);
        for rec in &mut records {
            let grading = parse_virtual(&rec.grading, query.group)?;
            let p = e.homology(&grading, rec.degree);
            for level in (0..=e.group.exponent).rev() {
                let rank = p.levels[level as usize].rank();
                for i in 0..rank {
                    let mut coords = vec![num_traits::Zero::zero(); rank];
                    coords[i] = num_traits::One::one();
                    let el = crate::green::Element {
                        grading: grading.clone(),
                        degree: rec.degree,
                        level,
                        coords,
                    };
                    if let Some(expr) = fact.expression_for(&el) {
                        rec.generators.push((level, expr.render()));
                    } else {
                        let neg = e.scale(-1, &el);
                        if let Some(expr) = fact.expression_for(&neg) {
                            rec.generators.push((level, expr.render()));
                        }
                    }
                }
            }
        }
    }

    records.sort_by(|a, b| (&a.grading, a.degree).cmp(&(&b.grading, b.degree)));
    Ok(records)
}

pub fn render_table(records: &[ResultRecord]) -> String {
    let mut out = String::new();
    let mut last = String::new();
    for r in records {
        if r.grading != last {
            out.push_str(&format!("S^({})\n", r.grading));
            last = r.grading.clone();
        }
        let gens = if r.generators.is_empty() {
            String::new()
        } else {
            let list: Vec<String> =
                r.generators.iter().map(|(l, e)| format!("{}:{}", l, e)).collect();
            format!("   gens {}", list.join(", "))
        };
        out.push_str(&format!(
            "  H_{:<4} = {:<14} [{}]{}\n",
            r.degree, r.name, r.levels, gens
        ));
    }
    out
}

pub fn render_json(records: &[ResultRecord]) -> crate::Result<String> {
    Ok(serde_json::to_string_pretty(records)?)
}
