//! Independent reference implementations used by the integration tests.
//! Nothing here calls the enumeration, averaging or search code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use bbqp::Instance;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn random_instance(rng: &mut impl Rng, m: usize, n: usize, lo: i64, hi: i64) -> Instance {
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .collect();
    let c = (0..m).map(|_| rng.random_range(lo..=hi)).collect();
    let d = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    Instance::from_rows(&rows, c, d).unwrap()
}

pub fn random_bits(rng: &mut impl Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.random_bool(0.5)).collect()
}

/// Bits of `mask`, least significant first.
pub fn bits(mask: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> i & 1 == 1).collect()
}

/// `x'Qy + cx + dy` straight from the definition.
#[allow(clippy::needless_range_loop)]
pub fn naive_value(inst: &Instance, x: &[bool], y: &[bool]) -> i64 {
    let mut v = 0;
    for i in 0..inst.m() {
        if x[i] {
            v += inst.c()[i];
        }
        for j in 0..inst.n() {
            if i == 0 && y[j] {
                v += inst.d()[j];
            }
            if x[i] && y[j] {
                v += inst.q(i, j);
            }
        }
    }
    v
}

/// Every solution with its value.
pub fn naive_all(inst: &Instance) -> Vec<(Vec<bool>, Vec<bool>, i64)> {
    let (m, n) = (inst.m(), inst.n());
    let mut out = Vec::with_capacity(1 << (m + n));
    for xm in 0..1u64 << m {
        let x = bits(xm, m);
        for ym in 0..1u64 << n {
            let y = bits(ym, n);
            let v = naive_value(inst, &x, &y);
            out.push((x.clone(), y, v));
        }
    }
    out
}

pub fn naive_optimum(inst: &Instance) -> i64 {
    naive_all(inst).into_iter().map(|s| s.2).max().unwrap()
}

pub fn naive_mean(inst: &Instance) -> BigRational {
    let all = naive_all(inst);
    let sum: i64 = all.iter().map(|s| s.2).sum();
    BigRational::new(BigInt::from(sum), BigInt::from(all.len()))
}

pub fn naive_nontrivial_mean(inst: &Instance) -> BigRational {
    let kept: Vec<i64> = naive_all(inst)
        .into_iter()
        .filter(|(x, y, _)| x.iter().any(|&b| b) && y.iter().any(|&b| b))
        .map(|s| s.2)
        .collect();
    BigRational::new(BigInt::from(kept.iter().sum::<i64>()), BigInt::from(kept.len()))
}

pub fn naive_count_at_most(inst: &Instance, threshold: &BigRational) -> u64 {
    naive_all(inst)
        .into_iter()
        .filter(|s| &BigRational::from_integer(BigInt::from(s.2)) <= threshold)
        .count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Coefficients are stored in quarters so ILP2's `q/4` stays exact.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub terms: Vec<(String, i128)>,
    pub sense: Sense,
    pub rhs: i128,
}

#[derive(Clone, Debug, Default)]
pub struct LpModel {
    pub objective: BTreeMap<String, i128>,
    pub constraints: Vec<Constraint>,
    pub binaries: Vec<String>,
}

fn quarters(tok: &str) -> i128 {
    let v: f64 = tok.parse().unwrap_or_else(|_| panic!("bad number {tok:?}"));
    let q = v * 4.0;
    assert!(q.fract() == 0.0, "{tok} is not a multiple of 1/4");
    q as i128
}

fn is_number(tok: &str) -> bool {
    let body = tok.strip_prefix('-').unwrap_or(tok);
    body.starts_with(|c: char| c.is_ascii_digit() || c == '.')
}

/// `[+|-] [coef] name` sequences.
fn parse_terms(text: &str) -> Vec<(String, i128)> {
    let mut out = Vec::new();
    let mut sign = 1i128;
    let mut coef: Option<i128> = None;
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t if is_number(t) => coef = Some(quarters(t)),
            name => {
                out.push((name.to_string(), sign * coef.unwrap_or(4)));
                sign = 1;
                coef = None;
            }
        }
    }
    assert!(coef.is_none(), "dangling coefficient in {text:?}");
    out
}

/// Parses the LP dialect written by the emitter.
pub fn parse_lp(text: &str) -> LpModel {
    #[derive(PartialEq)]
    enum Section {
        None,
        Objective,
        Constraints,
        Binaries,
        End,
    }
    let mut model = LpModel::default();
    let mut section = Section::None;
    let mut objective = String::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('\\') || trimmed.is_empty() {
            continue;
        }
        match trimmed {
            "Maximize" => {
                section = Section::Objective;
                continue;
            }
            "Subject To" => {
                section = Section::Constraints;
                continue;
            }
            "Binaries" => {
                section = Section::Binaries;
                continue;
            }
            "End" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Objective => {
                let body = trimmed.strip_prefix("obj:").unwrap_or(trimmed);
                objective.push(' ');
                objective.push_str(body);
            }
            Section::Constraints => {
                let (_, body) = trimmed.split_once(':').expect("named constraint");
                let (lhs, sense, rhs) = ["<=", ">=", "="]
                    .iter()
                    .find_map(|op| {
                        body.split_once(op).map(|(l, r)| {
                            let sense = match *op {
                                "<=" => Sense::Le,
                                ">=" => Sense::Ge,
                                _ => Sense::Eq,
                            };
                            (l, sense, r)
                        })
                    })
                    .expect("constraint operator");
                model.constraints.push(Constraint {
                    terms: parse_terms(lhs),
                    sense,
                    rhs: quarters(rhs.trim()),
                });
            }
            Section::Binaries => model.binaries.extend(trimmed.split_whitespace().map(String::from)),
            Section::None | Section::End => panic!("unexpected line {line:?}"),
        }
    }
    assert!(section == Section::End, "missing End");
    for (name, coef) in parse_terms(&objective) {
        *model.objective.entry(name).or_default() += coef;
    }
    model
}

fn satisfied(c: &Constraint, value: &dyn Fn(&str) -> bool) -> bool {
    let lhs: i128 = c.terms.iter().filter(|(n, _)| value(n)).map(|(_, k)| k).sum();
    match c.sense {
        Sense::Le => lhs <= c.rhs,
        Sense::Ge => lhs >= c.rhs,
        Sense::Eq => lhs == c.rhs,
    }
}

fn is_primary(name: &str) -> bool {
    name.starts_with("x_") || name.starts_with("y_")
}

/// Optimum of the binary program, in quarters, by enumerating `x`, `y` and,
/// for each, every assignment of the auxiliary variables. Auxiliary
/// variables are split into groups linked by shared constraints; the groups
/// are independent once `x` and `y` are fixed, so each is enumerated alone.
pub fn lp_brute_force_optimum(model: &LpModel, m: usize, n: usize) -> i128 {
    let declared: BTreeSet<&str> = model.binaries.iter().map(String::as_str).collect();
    for name in model
        .objective
        .keys()
        .chain(model.constraints.iter().flat_map(|c| c.terms.iter().map(|t| &t.0)))
    {
        assert!(declared.contains(name.as_str()), "{name} is not declared binary");
    }
    let aux: Vec<&str> = declared.iter().copied().filter(|n| !is_primary(n)).collect();
    let index: BTreeMap<&str, usize> = aux.iter().enumerate().map(|(k, n)| (*n, k)).collect();
    // union-find over auxiliary variables
    let mut parent: Vec<usize> = (0..aux.len()).collect();
    fn find(p: &mut Vec<usize>, k: usize) -> usize {
        if p[k] != k {
            let r = find(p, p[k]);
            p[k] = r;
        }
        p[k]
    }
    for c in &model.constraints {
        let ids: Vec<usize> = c.terms.iter().filter_map(|t| index.get(t.0.as_str()).copied()).collect();
        for w in ids.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..aux.len() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }
    let group_of: Vec<usize> = (0..aux.len()).map(|k| find(&mut parent, k)).collect();
    let mut group_constraints: BTreeMap<usize, Vec<&Constraint>> = BTreeMap::new();
    let mut primary_constraints = Vec::new();
    for c in &model.constraints {
        match c.terms.iter().find_map(|t| index.get(t.0.as_str())) {
            Some(&k) => group_constraints.entry(group_of[k]).or_default().push(c),
            None => primary_constraints.push(c),
        }
    }
    for g in groups.values() {
        assert!(g.len() <= 16, "auxiliary group too large to enumerate");
    }

    let mut best: Option<i128> = None;
    for xm in 0..1u64 << m {
        for ym in 0..1u64 << n {
            let (x, y) = (bits(xm, m), bits(ym, n));
            let primary = |name: &str| -> bool {
                let idx: usize = name[2..].parse().unwrap();
                if name.starts_with("x_") {
                    x[idx - 1]
                } else {
                    y[idx - 1]
                }
            };
            if !primary_constraints.iter().all(|c| satisfied(c, &|n| primary(n))) {
                continue;
            }
            let mut total: i128 = model
                .objective
                .iter()
                .filter(|(n, _)| is_primary(n) && primary(n))
                .map(|(_, k)| k)
                .sum();
            let mut feasible = true;
            for (root, members) in &groups {
                let cons = group_constraints.get(root).map(Vec::as_slice).unwrap_or(&[]);
                let mut group_best: Option<i128> = None;
                for am in 0..1u64 << members.len() {
                    let value = |name: &str| -> bool {
                        match index.get(name) {
                            Some(k) => {
                                let pos = members.iter().position(|v| v == k).unwrap();
                                am >> pos & 1 == 1
                            }
                            None => primary(name),
                        }
                    };
                    if cons.iter().all(|c| satisfied(c, &value)) {
                        let obj: i128 = members
                            .iter()
                            .filter(|&&k| value(aux[k]))
                            .map(|&k| model.objective.get(aux[k]).copied().unwrap_or(0))
                            .sum();
                        group_best = Some(group_best.map_or(obj, |b| b.max(obj)));
                    }
                }
                match group_best {
                    Some(v) => total += v,
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            if feasible {
                best = Some(best.map_or(total, |b| b.max(total)));
            }
        }
    }
    best.expect("model has a feasible point")
}
