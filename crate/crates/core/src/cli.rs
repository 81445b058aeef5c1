//! Problem files and the batch commands behind the `pidos` binary.
//!
//! Every command returns its output as a string together with an exit code,
//! so the binary stays a thin wrapper.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::boundary::SolvedProblem;
use crate::cauchy::{compose_factors, expand_factors, solve_cauchy, CauchyProblem, FirstOrderFactor};
use crate::error::Error;
use crate::exppoly::ExpPoly;
use crate::operator::OperatorExpr;
use crate::oracle::{grid_points, solve_and_verify, VerifyOptions, DEFAULT_TRUNCATION};
use crate::scalar::ExactComplex;
use crate::syntax::{parse_exppoly, parse_operator, print_scalar};

pub const FORMAT_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_FILE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Scalar written either as a string such as `"3/2+1/2i"` or as a JSON
/// integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

impl ScalarSpec {
    fn parse(&self) -> Result<ExactComplex, CliError> {
        match self {
            ScalarSpec::Int(k) => Ok(ExactComplex::from(*k)),
            ScalarSpec::Text(s) => s.trim().parse().map_err(|_| CliError::invalid(format!("bad scalar {s:?}"))),
        }
    }

    fn from_scalar(c: &ExactComplex) -> Self {
        ScalarSpec::Text(print_scalar(c))
    }
}

fn zero_spec() -> ScalarSpec {
    ScalarSpec::Int(0)
}

fn one() -> usize {
    1
}

/// `a + a0 D_t + coeffs[0] D_1 + ..`, raised to `multiplicity`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    #[serde(default = "zero_spec")]
    pub a: ScalarSpec,
    pub a0: ScalarSpec,
    #[serde(default)]
    pub coeffs: Vec<ScalarSpec>,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// One `[lo, hi]` per variable `t, x1, ..`.
    pub ranges: Vec<[f64; 2]>,
    pub steps: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub format: u32,
    pub n: usize,
    pub factors: Vec<FactorSpec>,
    pub data: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
}

/// `{"format": 1, "problems": [path, path]}`, paths relative to the file.
#[derive(Clone, Debug, Deserialize)]
pub struct ComposeFile {
    pub format: u32,
    pub problems: Vec<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID_FILE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_INVALID_FILE,
            _ => EXIT_PRECONDITION,
        };
        let message = match e {
            Error::Arity { expected, got } => format!(
                "expected {expected} data functions f1..f{expected}, where fi prescribes D_t^(i-1) u at t = 0; got {got}"
            ),
            other => other.to_string(),
        };
        CliError { code, message }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub truncation: Option<u32>,
    pub seed: u64,
    pub budget: usize,
    pub format: OutputFormat,
}

impl Default for Options {
    fn default() -> Self {
        Options { truncation: None, seed: 0, budget: crate::operator::DEFAULT_BUDGET, format: OutputFormat::Text }
    }
}

/// Command output and exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout }
    }
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::invalid(e.to_string()))?;
    if file.format != FORMAT_VERSION {
        return Err(CliError::invalid(format!("unsupported format {}", file.format)));
    }
    Ok(file)
}

/// Parsed contents of a problem file.
pub struct Loaded {
    pub problem: CauchyProblem,
    pub operator: Option<OperatorExpr>,
    pub expected: Option<ExpPoly>,
}

fn parse_expr(s: &str, what: &str) -> Result<ExpPoly, CliError> {
    parse_exppoly(s).map_err(|e| CliError::invalid(format!("{what}: {e}")))
}

pub fn load(file: &ProblemFile) -> Result<Loaded, CliError> {
    let factors = file
        .factors
        .iter()
        .map(|f| {
            let mut coeffs = vec![f.a0.parse()?];
            for c in &f.coeffs {
                coeffs.push(c.parse()?);
            }
            Ok(FirstOrderFactor { a: f.a.parse()?, coeffs, multiplicity: f.multiplicity })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let data = file
        .data
        .iter()
        .enumerate()
        .map(|(k, s)| parse_expr(s, &format!("data f{}", k + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let operator = match &file.operator {
        Some(s) => Some(parse_operator(s).map_err(|e| CliError::invalid(format!("operator: {e}")))?),
        None => None,
    };
    let expected = match &file.expected {
        Some(s) => Some(parse_expr(s, "expected")?),
        None => None,
    };
    Ok(Loaded { problem: CauchyProblem::new(file.n, factors, data), operator, expected })
}

fn verify_options(file: &ProblemFile, opts: &Options) -> VerifyOptions {
    VerifyOptions {
        truncation: opts.truncation.or(file.truncation).unwrap_or(DEFAULT_TRUNCATION),
        seed: opts.seed,
        budget: opts.budget,
        ..VerifyOptions::default()
    }
}

#[derive(Serialize)]
struct SolveJson<'a> {
    #[serde(flatten)]
    problem: &'a ProblemFile,
    state: Vec<String>,
    signal: String,
}

pub fn cmd_solve(file: &ProblemFile, opts: &Options) -> Result<Outcome, CliError> {
    let loaded = load(file)?;
    if let Some(op) = &loaded.operator {
        if !crate::cauchy::verify_factorization(op, &loaded.problem.factors) {
            return Err(Error::FactorizationMismatch.into());
        }
    }
    let solution = solve_cauchy(&loaded.problem)?;
    let state: Vec<String> = solution.state.rows.iter().map(ToString::to_string).collect();
    let signal = solution.signal.op.to_string();
    let out = match opts.format {
        OutputFormat::Text => {
            let mut s = format!("u = {}\n", solution.u);
            for (k, row) in state.iter().enumerate() {
                writeln!(s, "H{} = {row}", k + 1).unwrap();
            }
            writeln!(s, "G = {signal}").unwrap();
            s
        }
        OutputFormat::Json => {
            let mut solved = file.clone();
            solved.operator = Some(solution.operator.to_string());
            solved.expected = Some(solution.u.to_string());
            let json = SolveJson { problem: &solved, state, signal };
            serde_json::to_string_pretty(&json).expect("serializable") + "\n"
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_verify(file: &ProblemFile, opts: &Options) -> Result<Outcome, CliError> {
    let loaded = load(file)?;
    let vopts = verify_options(file, opts);
    let (_, report) = solve_and_verify(&loaded.problem, loaded.expected.as_ref(), loaded.operator.as_ref(), &vopts)?;
    let stdout = match opts.format {
        OutputFormat::Text => format!("{report}\n"),
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome { code, stdout })
}

/// CSV with header `t,x1,..,re,im`; an absent or empty grid gives the
/// header only.
pub fn cmd_eval(file: &ProblemFile, _opts: &Options) -> Result<Outcome, CliError> {
    let loaded = load(file)?;
    let u = solve_cauchy(&loaded.problem)?.u;
    let mut header = vec!["t".to_string()];
    header.extend((1..=file.n).map(|k| format!("x{k}")));
    header.push("re".into());
    header.push("im".into());
    let mut out = header.join(",") + "\n";
    let points = match &file.grid {
        Some(g) => {
            if g.ranges.len() != file.n + 1 || g.steps.len() != file.n + 1 {
                return Err(CliError::invalid(format!("grid needs {} ranges and steps", file.n + 1)));
            }
            let ranges: Vec<(f64, f64)> = g.ranges.iter().map(|r| (r[0], r[1])).collect();
            grid_points(&ranges, &g.steps)
        }
        None => vec![],
    };
    for p in points {
        let v = u.eval_numeric(&p);
        let mut row: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
        row.push(format!("{:.16e}", v.re));
        row.push(format!("{:.16e}", v.im));
        out += &row.join(",");
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

fn factor_key(f: &FirstOrderFactor, n: usize) -> (ExactComplex, Vec<ExactComplex>) {
    let mut coeffs = f.coeffs.clone();
    coeffs.resize(n + 1, ExactComplex::zero());
    (f.a.clone(), coeffs)
}

/// Factors of `outer` followed by those of `inner`, equal factors merged.
fn merge_factors(outer: &[FirstOrderFactor], inner: &[FirstOrderFactor], n: usize) -> Vec<FirstOrderFactor> {
    let mut merged: Vec<FirstOrderFactor> = Vec::new();
    for f in outer.iter().chain(inner) {
        let key = factor_key(f, n);
        match merged.iter_mut().find(|g| factor_key(g, n) == key) {
            Some(g) => g.multiplicity += f.multiplicity,
            None => merged.push(f.clone()),
        }
    }
    merged
}

/// Cauchy data of the product problem from the outer data `f` (conditions
/// on `T_inner u`) and the inner data `g` (conditions on `u`).
pub fn product_cauchy_data(inner: &[FirstOrderFactor], f: &[ExpPoly], g: &[ExpPoly]) -> Result<Vec<ExpPoly>, Error> {
    let symbol = expand_factors(inner);
    let slices = symbol.collect_var(0);
    let m2 = g.len();
    let lead = slices
        .get(&(m2 as u32))
        .and_then(|p| p.terms().next().filter(|(mono, _)| mono.is_one() && p.len() == 1).map(|(_, c)| c.clone()))
        .ok_or(Error::NotCkForm)?;
    let inv = lead.inv().ok_or(Error::ZeroLeadCoefficient)?;
    let lower: Vec<(usize, OperatorExpr)> = slices
        .iter()
        .filter(|(k, _)| (**k as usize) < m2)
        .map(|(k, p)| (*k as usize, OperatorExpr::from_diff_poly(p)))
        .collect();
    let mut u: Vec<ExpPoly> = g.to_vec();
    for (i, fi) in f.iter().enumerate() {
        let mut rest = fi.clone();
        for (k, q) in &lower {
            rest = rest.sub(&q.apply(&u[i + k]));
        }
        u.push(rest.scale(&inv));
    }
    Ok(u)
}

#[derive(Serialize)]
struct ComposeJson<'a> {
    #[serde(flatten)]
    problem: &'a ProblemFile,
    basis: Vec<String>,
    state: Vec<String>,
    signal: String,
}

pub fn compose_files(outer: &ProblemFile, inner: &ProblemFile) -> Result<(ProblemFile, SolvedProblem), CliError> {
    if outer.n != inner.n {
        return Err(CliError {
            code: EXIT_PRECONDITION,
            message: format!("cannot compose problems in {} and {} space variables", outer.n, inner.n),
        });
    }
    let (lo, li) = (load(outer)?, load(inner)?);
    lo.problem.validate()?;
    li.problem.validate()?;
    let n = outer.n;
    let data = product_cauchy_data(&li.problem.simple_factors(), &lo.problem.data, &li.problem.data)?;
    let factors = merge_factors(&lo.problem.factors, &li.problem.factors, n);
    let product = CauchyProblem::new(n, factors.clone(), data);
    let solved = compose_factors(&product.simple_factors())?;
    let file = ProblemFile {
        format: FORMAT_VERSION,
        n,
        factors: factors
            .iter()
            .map(|f| FactorSpec {
                a: ScalarSpec::from_scalar(&f.a),
                a0: ScalarSpec::from_scalar(&f.a0()),
                coeffs: f.coeffs[1..].iter().map(ScalarSpec::from_scalar).collect(),
                multiplicity: f.multiplicity,
            })
            .collect(),
        data: product.data.iter().map(ToString::to_string).collect(),
        operator: Some(product.operator().to_string()),
        expected: None,
        grid: outer.grid.clone().or_else(|| inner.grid.clone()),
        truncation: outer.truncation.or(inner.truncation),
    };
    Ok((file, solved))
}

pub fn cmd_compose(outer: &ProblemFile, inner: &ProblemFile, opts: &Options) -> Result<Outcome, CliError> {
    let (file, solved) = compose_files(outer, inner)?;
    let basis: Vec<String> = solved.problem.basis.functionals.iter().map(ToString::to_string).collect();
    let state: Vec<String> = solved.state.rows.iter().map(ToString::to_string).collect();
    let signal = solved.signal.op.to_string();
    let out = match opts.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&ComposeJson { problem: &file, basis, state, signal }).expect("serializable")
                + "\n"
        }
        OutputFormat::Text => {
            let mut s = format!("T = {}\n", file.operator.as_deref().unwrap_or_default());
            for (k, f) in file.factors.iter().enumerate() {
                let show = |c: &ScalarSpec| match c {
                    ScalarSpec::Int(k) => k.to_string(),
                    ScalarSpec::Text(t) => t.clone(),
                };
                let coeffs: Vec<String> = std::iter::once(&f.a0).chain(&f.coeffs).map(show).collect();
                writeln!(
                    s,
                    "factor {}: a = {}, coeffs = [{}], multiplicity {}",
                    k + 1,
                    show(&f.a),
                    coeffs.join(", "),
                    f.multiplicity
                )
                .unwrap();
            }
            for (k, d) in file.data.iter().enumerate() {
                writeln!(s, "f{} = {d}", k + 1).unwrap();
            }
            for (k, b) in basis.iter().enumerate() {
                writeln!(s, "B{} = {b}", k + 1).unwrap();
            }
            for (k, row) in state.iter().enumerate() {
                writeln!(s, "H{} = {row}", k + 1).unwrap();
            }
            writeln!(s, "G = {signal}").unwrap();
            s
        }
    };
    Ok(Outcome::ok(out))
}

/// Reads a compose list and the problem files it names.
pub fn read_compose(path: &Path) -> Result<(ProblemFile, ProblemFile), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let list: ComposeFile = serde_json::from_str(&text).map_err(|e| CliError::invalid(e.to_string()))?;
    if list.format != FORMAT_VERSION {
        return Err(CliError::invalid(format!("unsupported format {}", list.format)));
    }
    if list.problems.len() != 2 {
        return Err(CliError::invalid(format!("expected two problem files, got {}", list.problems.len())));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    Ok((read_problem(&base.join(&list.problems[0]))?, read_problem(&base.join(&list.problems[1]))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WAVE: &str = r#"{"format": 1, "n": 1,
        "factors": [{"a0": 1, "coeffs": [-1]}, {"a0": 1, "coeffs": [1]}],
        "data": ["x1^2", "0"]}"#;

    #[test]
    fn solve_wave_text() {
        let out = cmd_solve(&parse_problem(WAVE).unwrap(), &Options::default()).unwrap();
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("u = x1^2 + t^2\n"), "{}", out.stdout);
    }

    #[test]
    fn arity_message_names_indexing() {
        let mut file = parse_problem(WAVE).unwrap();
        file.data.pop();
        let err = cmd_solve(&file, &Options::default()).unwrap_err();
        assert_eq!(err.code, EXIT_PRECONDITION);
        assert!(err.message.contains("D_t^(i-1) u at t = 0"));
    }

    #[test]
    fn rejects_bad_files() {
        assert_eq!(parse_problem("{").unwrap_err().code, EXIT_INVALID_FILE);
        assert_eq!(parse_problem(&WAVE.replace("\"format\": 1", "\"format\": 2")).unwrap_err().code, EXIT_INVALID_FILE);
        let file = parse_problem(&WAVE.replace("x1^2", "x1^")).unwrap();
        assert_eq!(cmd_solve(&file, &Options::default()).unwrap_err().code, EXIT_INVALID_FILE);
    }

    #[test]
    fn eval_grid_corner() {
        let mut file = parse_problem(WAVE).unwrap();
        file.grid = Some(GridSpec { ranges: vec![[0.0, 0.5], [0.0, 0.5]], steps: vec![3, 3] });
        let out = cmd_eval(&file, &Options::default()).unwrap();
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "t,x1,re,im");
        assert_eq!(lines.len(), 10);
        let last: Vec<f64> = lines[9].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(last, vec![0.5, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn product_data_for_two_transports() {
        // outer (D_t + D_1) with datum f, inner (D_t - D_1) with datum g:
        // u_t = f + D_1 g at t = 0
        let inner = [FirstOrderFactor::from_ints(0, &[1, -1])];
        let f = parse_exppoly("x1").unwrap();
        let g = parse_exppoly("x1^2").unwrap();
        let data = product_cauchy_data(&inner, &[f], &[g]).unwrap();
        assert_eq!(data[1], parse_exppoly("3*x1").unwrap());
    }
}
