//! LP-format emission of the two integer programming formulations, and
//! import of fractional solutions produced by external LP solvers.
//!
//! ILP1 linearizes `x_i y_j` with one variable `z_i_j`: `z <= x`, `z <= y`,
//! and `z >= x + y - 1` only where `q_ij < 0` (for `q_ij >= 0` the upper
//! bounds suffice at an optimum). ILP2 uses four variables per pair:
//! `u + 2v = x + y`, `u + v <= 1` force `v = x y`, `u = x xor y`, and
//! `w - z = x - y`, `z + w <= 1` force `w + z = u`, so the objective term
//! `q (u/4 + v - w/4 - z/4)` equals `q x y`.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fractional::FractionalPoint;
use crate::instance::Instance;

/// Values this far outside `[0, 1]` are snapped to the bound.
pub const FRACTIONAL_TOLERANCE: f64 = 1e-9;
const TERMS_PER_LINE: usize = 8;
const NAMES_PER_LINE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formulation {
    Ilp1,
    Ilp2,
}

impl Formulation {
    pub fn name(self) -> &'static str {
        match self {
            Formulation::Ilp1 => "ILP1",
            Formulation::Ilp2 => "ILP2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelStats {
    pub formulation: Formulation,
    pub variable_count: usize,
    pub constraint_count: usize,
    pub binary_count: usize,
}

/// Coefficient of a linear term, either an integer or an integer over 4.
#[derive(Clone, Copy)]
struct Coef {
    quarters: i128,
}

impl Coef {
    fn int(v: i64) -> Self {
        Coef {
            quarters: 4 * v as i128,
        }
    }

    fn quarter(v: i64) -> Self {
        Coef { quarters: v as i128 }
    }

    /// `|coef|` as an exact decimal.
    fn magnitude(self) -> String {
        let q = self.quarters.unsigned_abs();
        let (whole, frac) = (q / 4, q % 4);
        match frac {
            0 => whole.to_string(),
            1 => format!("{whole}.25"),
            2 => format!("{whole}.5"),
            _ => format!("{whole}.75"),
        }
    }
}

/// Accumulates `coef name` terms, wrapping long rows.
struct Row {
    text: String,
    terms: usize,
}

impl Row {
    fn new(label: &str) -> Self {
        Row {
            text: format!(" {label}:"),
            terms: 0,
        }
    }

    fn term(&mut self, coef: Coef, name: &str) {
        if coef.quarters == 0 {
            return;
        }
        if self.terms > 0 && self.terms.is_multiple_of(TERMS_PER_LINE) {
            self.text.push_str("\n   ");
        }
        let sign = match (self.terms, coef.quarters < 0) {
            (0, true) => " -",
            (0, false) => " ",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let _ = write!(self.text, "{sign}{} {name}", coef.magnitude());
        self.terms += 1;
    }

    fn finish(mut self, fallback: &str) -> String {
        if self.terms == 0 {
            let _ = write!(self.text, " 0 {fallback}");
        }
        self.text.push('\n');
        self.text
    }
}

fn x_name(i: usize) -> String {
    format!("x_{}", i + 1)
}

fn y_name(j: usize) -> String {
    format!("y_{}", j + 1)
}

fn pair_name(prefix: &str, i: usize, j: usize) -> String {
    format!("{prefix}_{}_{}", i + 1, j + 1)
}

fn push_binaries(out: &mut String, names: &[String]) {
    out.push_str("Binaries\n");
    for chunk in names.chunks(NAMES_PER_LINE) {
        out.push(' ');
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
    out.push_str("End\n");
}

fn linear_terms(row: &mut Row, inst: &Instance) {
    for (i, &c) in inst.c().iter().enumerate() {
        row.term(Coef::int(c), &x_name(i));
    }
    for (j, &d) in inst.d().iter().enumerate() {
        row.term(Coef::int(d), &y_name(j));
    }
}

fn header(out: &mut String, f: Formulation, inst: &Instance) {
    let _ = write!(out, "\\ {} for a {} x {} instance", f.name(), inst.m(), inst.n());
    if let Some(name) = inst.name() {
        let _ = write!(out, " ({name})");
    }
    out.push('\n');
}

/// The ILP1 model as LP-format text.
pub fn ilp1_text(inst: &Instance) -> (String, ModelStats) {
    let (m, n) = (inst.m(), inst.n());
    let mut out = String::new();
    header(&mut out, Formulation::Ilp1, inst);
    out.push_str("Maximize\n");
    let mut obj = Row::new("obj");
    for i in 0..m {
        for j in 0..n {
            obj.term(Coef::int(inst.q(i, j)), &pair_name("z", i, j));
        }
    }
    linear_terms(&mut obj, inst);
    out.push_str(&obj.finish(&x_name(0)));
    out.push_str("Subject To\n");
    let mut k = 0;
    let mut constraint = |out: &mut String, body: String| {
        k += 1;
        let _ = writeln!(out, " c{k}: {body}");
    };
    for i in 0..m {
        for j in 0..n {
            let z = pair_name("z", i, j);
            let (x, y) = (x_name(i), y_name(j));
            constraint(&mut out, format!("{z} - {x} <= 0"));
            constraint(&mut out, format!("{z} - {y} <= 0"));
            if inst.q(i, j) < 0 {
                constraint(&mut out, format!("{z} - {x} - {y} >= -1"));
            }
        }
    }
    let mut names: Vec<String> = (0..m).map(x_name).chain((0..n).map(y_name)).collect();
    for i in 0..m {
        for j in 0..n {
            names.push(pair_name("z", i, j));
        }
    }
    push_binaries(&mut out, &names);
    let negatives = inst.q_entries().iter().filter(|&&q| q < 0).count();
    let stats = ModelStats {
        formulation: Formulation::Ilp1,
        variable_count: names.len(),
        constraint_count: 2 * m * n + negatives,
        binary_count: names.len(),
    };
    (out, stats)
}

/// The ILP2 model as LP-format text.
pub fn ilp2_text(inst: &Instance) -> (String, ModelStats) {
    let (m, n) = (inst.m(), inst.n());
    let mut out = String::new();
    header(&mut out, Formulation::Ilp2, inst);
    out.push_str("Maximize\n");
    let mut obj = Row::new("obj");
    for i in 0..m {
        for j in 0..n {
            let q = inst.q(i, j);
            obj.term(Coef::quarter(q), &pair_name("u", i, j));
            obj.term(Coef::int(q), &pair_name("v", i, j));
            obj.term(Coef::quarter(-q), &pair_name("w", i, j));
            obj.term(Coef::quarter(-q), &pair_name("z", i, j));
        }
    }
    linear_terms(&mut obj, inst);
    out.push_str(&obj.finish(&x_name(0)));
    out.push_str("Subject To\n");
    let mut k = 0;
    for i in 0..m {
        for j in 0..n {
            let [u, v, w, z] = ["u", "v", "w", "z"].map(|p| pair_name(p, i, j));
            let (x, y) = (x_name(i), y_name(j));
            for body in [
                format!("{u} + 2 {v} - {x} - {y} = 0"),
                format!("{u} + {v} <= 1"),
                format!("{w} - {z} - {x} + {y} = 0"),
                format!("{z} + {w} <= 1"),
            ] {
                k += 1;
                let _ = writeln!(out, " c{k}: {body}");
            }
        }
    }
    let mut names: Vec<String> = (0..m).map(x_name).chain((0..n).map(y_name)).collect();
    for prefix in ["u", "v", "w", "z"] {
        for i in 0..m {
            for j in 0..n {
                names.push(pair_name(prefix, i, j));
            }
        }
    }
    push_binaries(&mut out, &names);
    let stats = ModelStats {
        formulation: Formulation::Ilp2,
        variable_count: names.len(),
        constraint_count: 4 * m * n,
        binary_count: names.len(),
    };
    (out, stats)
}

pub fn model_text(inst: &Instance, f: Formulation) -> (String, ModelStats) {
    match f {
        Formulation::Ilp1 => ilp1_text(inst),
        Formulation::Ilp2 => ilp2_text(inst),
    }
}

pub fn emit_ilp1(inst: &Instance, out: &mut impl io::Write) -> Result<ModelStats> {
    let (text, stats) = ilp1_text(inst);
    out.write_all(text.as_bytes())?;
    Ok(stats)
}

pub fn emit_ilp2(inst: &Instance, out: &mut impl io::Write) -> Result<ModelStats> {
    let (text, stats) = ilp2_text(inst);
    out.write_all(text.as_bytes())?;
    Ok(stats)
}

/// Parses `x <i> <value>` / `y <j> <value>` lines (1-based indices).
/// Unlisted components are 0; blank lines and `#` comments are skipped.
pub fn read_fractional_solution(inst: &Instance, text: &str) -> Result<FractionalPoint> {
    let mut x = vec![None; inst.m()];
    let mut y = vec![None; inst.n()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        let [side, index, value] = parts[..] else {
            return Err(Error::parse(line, "expected `x <i> <value>` or `y <j> <value>`"));
        };
        let target = match side {
            "x" => &mut x,
            "y" => &mut y,
            other => return Err(Error::parse(line, format!("unknown side {other:?}"))),
        };
        let index: usize = index
            .parse()
            .map_err(|_| Error::parse(line, format!("bad index {index:?}")))?;
        if index == 0 || index > target.len() {
            return Err(Error::parse(
                line,
                format!("{side} index {index} is outside 1..={}", target.len()),
            ));
        }
        let value: f64 = value
            .parse()
            .map_err(|_| Error::parse(line, format!("bad value {value:?}")))?;
        if !(-FRACTIONAL_TOLERANCE..=1.0 + FRACTIONAL_TOLERANCE).contains(&value) {
            return Err(Error::parse(line, format!("value {value} is outside [0, 1]")));
        }
        let slot = &mut target[index - 1];
        if slot.is_some() {
            return Err(Error::parse(line, format!("{side} {index} listed twice")));
        }
        *slot = Some(value.clamp(0.0, 1.0));
    }
    let fill = |v: Vec<Option<f64>>| v.into_iter().map(|e| e.unwrap_or(0.0)).collect();
    FractionalPoint::new(fill(x), fill(y))
}

pub fn read_fractional_file(inst: &Instance, path: impl AsRef<Path>) -> Result<FractionalPoint> {
    read_fractional_solution(inst, &std::fs::read_to_string(path)?)
}

/// Writes `p` in the format read by [`read_fractional_solution`].
pub fn fractional_to_text(p: &FractionalPoint) -> String {
    let mut out = String::new();
    for (i, v) in p.x().iter().enumerate() {
        let _ = writeln!(out, "x {} {v}", i + 1);
    }
    for (j, v) in p.y().iter().enumerate() {
        let _ = writeln!(out, "y {} {v}", j + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(q: i64) -> Instance {
        Instance::homogeneous(&[vec![q]]).unwrap()
    }

    #[test]
    fn ilp1_single_negative() {
        let (text, stats) = ilp1_text(&one(-1));
        assert!(text.contains(" obj: -1 z_1_1\n"), "{text}");
        assert!(text.contains(" c3: z_1_1 - x_1 - y_1 >= -1\n"));
        assert_eq!((stats.variable_count, stats.constraint_count), (3, 3));
    }

    #[test]
    fn ilp1_single_positive() {
        let (text, stats) = ilp1_text(&one(1));
        assert!(text.contains(" obj: 1 z_1_1\n"));
        assert!(!text.contains(">="));
        assert_eq!((stats.variable_count, stats.constraint_count), (3, 2));
    }

    #[test]
    fn ilp1_counts() {
        let inst = Instance::from_rows(&[vec![1, -2, 0], vec![-3, 4, 5]], vec![0, 1], vec![1, 1, 1]).unwrap();
        let (_, stats) = ilp1_text(&inst);
        assert_eq!((stats.variable_count, stats.constraint_count, stats.binary_count), (11, 14, 11));
    }

    #[test]
    fn ilp2_coefficients() {
        let (text, stats) = ilp2_text(&one(4));
        assert!(text.contains(" obj: 1 u_1_1 + 4 v_1_1 - 1 w_1_1 - 1 z_1_1\n"), "{text}");
        assert_eq!((stats.variable_count, stats.constraint_count), (6, 4));
        let (text, _) = ilp2_text(&one(1));
        assert!(text.contains(" obj: 0.25 u_1_1 + 1 v_1_1 - 0.25 w_1_1 - 0.25 z_1_1\n"));
        let (text, _) = ilp2_text(&one(-6));
        assert!(text.contains(" obj: -1.5 u_1_1 - 6 v_1_1 + 1.5 w_1_1 + 1.5 z_1_1\n"));
        let (_, stats) = ilp2_text(&Instance::zeros(2, 2).unwrap());
        assert_eq!((stats.variable_count, stats.constraint_count), (20, 16));
    }

    #[test]
    fn empty_objective_has_placeholder() {
        let (text, _) = ilp1_text(&Instance::zeros(1, 1).unwrap());
        assert!(text.contains(" obj: 0 x_1\n"));
    }

    #[test]
    fn long_rows_wrap() {
        let inst = Instance::homogeneous(&[vec![1; 20]]).unwrap();
        let (text, _) = ilp1_text(&inst);
        assert!(text.lines().all(|l| l.len() < 200));
    }

    #[test]
    fn fractional_examples() {
        let inst = one(1);
        let p = read_fractional_solution(&inst, "x 1 0.5\ny 1 0.5\n").unwrap();
        assert_eq!((p.x(), p.y()), (&[0.5][..], &[0.5][..]));
        let p = read_fractional_solution(&inst, "").unwrap();
        assert_eq!((p.x(), p.y()), (&[0.0][..], &[0.0][..]));
        let p = read_fractional_solution(&inst, "# lp\nx 1 1.0000000001\ny 1 -1e-12").unwrap();
        assert_eq!((p.x(), p.y()), (&[1.0][..], &[0.0][..]));
        match read_fractional_solution(&inst, "x 1 0.5\ny 1 1.2") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        for bad in ["x 2 0.5", "x 0 0.5", "z 1 0.5", "x 1", "x 1 abc", "x 1 0.1\nx 1 0.2", "x 1 NaN"] {
            assert!(read_fractional_solution(&inst, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fractional_text_round_trip() {
        let inst = Instance::zeros(2, 3).unwrap();
        let p = FractionalPoint::new(vec![0.125, 1.0], vec![0.0, 0.3, 0.7]).unwrap();
        assert_eq!(read_fractional_solution(&inst, &fractional_to_text(&p)).unwrap(), p);
    }
}
