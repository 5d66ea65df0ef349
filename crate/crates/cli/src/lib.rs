//! The `dgar` command line. [`run`] parses arguments, executes one
//! subcommand and writes its report.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dgar::dga::{algebra_cohomology, cohomology, validate_dga, validate_module};
use dgar::format::{parse_input, Document};
use dgar::loop_sphere::{
    decompose, endo_dga_cohomology, indec_cohomology, kt_cohomology, sphere_ar_triangle, verify_ar_triangle,
    SphereIndecLabel,
};
use dgar::poincare::poincare_check;
use dgar::quiver::{build_quiver, check_stable_translation, check_za_infinity, components, to_dot};
use dgar::report::{dims_table, range_text, Report};
use dgar::resolution::{ar_translate, minimal_resolution, rhom_cohomology, GeneratorKind};
use dgar::{DgModule, Field, FinDga, GradedDims, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dgar",
    version,
    about = "Cochain DGAs, their derived categories and AR theory over spheres"
)]
struct Cli {
    /// Ground field: Q or p=PRIME. Documents must be over this field.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Args, Debug)]
struct Window {
    /// Resolution window in degrees above the bottom class.
    #[arg(long)]
    window: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the DGA or DG-module axioms of a document.
    Validate { file: PathBuf },
    /// Cohomology of an algebra, a module or a k[T]-module.
    Cohomology { file: PathBuf },
    /// Decide Poincaré duality of H R, hence existence of AR triangles.
    #[command(alias = "ar-exists")]
    Poincare {
        file: PathBuf,
        /// Also compute Ext(k, R) on a resolution window of this size.
        #[arg(long)]
        ext_window: Option<u32>,
    },
    /// Minimal semi-free resolution of a left module.
    Resolve {
        /// A dga file (R itself), a dg_module file, or k:FILE.
        module: String,
        #[command(flatten)]
        window: Window,
    },
    /// The AR translate DR ⊗ P of a compact module.
    ArTranslate {
        module: String,
        #[command(flatten)]
        window: Window,
    },
    /// Cohomology of RHom(M, N).
    Rhom {
        m: String,
        n: String,
        #[command(flatten)]
        window: Window,
    },
    /// Decompose a k[T]-module into blocks Σʲ C_m.
    KtDecompose { file: PathBuf },
    /// The AR triangle ending in Σʲ N_m over Sᵈ.
    SphereTriangle {
        #[arg(long)]
        d: i32,
        #[arg(long, allow_hyphen_values = true)]
        j: i32,
        #[arg(long)]
        m: u32,
    },
    /// Verify AR triangles over Sᵈ, one or all with |j| ≤ JMAX, m ≤ MMAX.
    SphereVerify {
        #[arg(long)]
        d: i32,
        #[arg(long, allow_hyphen_values = true, requires = "m")]
        j: Option<i32>,
        #[arg(long, requires = "j")]
        m: Option<u32>,
        #[arg(long, default_value_t = 5)]
        jmax: i32,
        #[arg(long, default_value_t = 6)]
        mmax: u32,
    },
    /// Build the AR quiver of D^c(Sᵈ) on a window and check its shape.
    SphereQuiver {
        #[arg(long)]
        d: i32,
        #[arg(long, allow_hyphen_values = true)]
        jmin: i32,
        #[arg(long, allow_hyphen_values = true)]
        jmax: i32,
        #[arg(long)]
        mmax: u32,
        /// Write the quiver in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Cohomology of the endomorphism DGA of the resolution of k over k[T].
    EndoCohomology {
        #[arg(long)]
        d: i32,
        /// Degree range LO:HI.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (i32, i32),
    },
    /// Run the acceptance suite.
    Selftest,
}

fn parse_range(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// A failure that ends the command with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<Report, UsageError>;

fn load(path: &std::path::Path, field: Option<Field>) -> Result<Document, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_input(&text, field).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &std::path::Path, field: Option<Field>) -> Result<FinDga, UsageError> {
    match load(path, field)? {
        Document::Dga(r) => Ok(r),
        Document::Module(m) => Ok((**m.algebra()).clone()),
        Document::Kt { .. } => Err(UsageError(format!("{}: expected a dga document", path.display()))),
    }
}

/// `PATH` of a dga is `R` as a left module, `k:PATH` the simple module.
fn load_module(arg: &str, field: Option<Field>) -> Result<DgModule, UsageError> {
    if let Some(path) = arg.strip_prefix("k:") {
        let r = Arc::new(load_algebra(path.as_ref(), field)?);
        return Ok(DgModule::simple(r, Side::Left));
    }
    match load(arg.as_ref(), field)? {
        Document::Dga(r) => Ok(DgModule::regular(Arc::new(r), Side::Left)),
        Document::Module(m) => Ok(m),
        Document::Kt { .. } => Err(UsageError(format!(
            "{arg}: expected a dga or dg_module document"
        ))),
    }
}

fn sphere_side(field: Option<Field>) -> Result<(), UsageError> {
    match field {
        Some(f) if f.characteristic() != 0 => Err(UsageError(format!(
            "sphere computations need characteristic zero, got --field {f}"
        ))),
        _ => Ok(()),
    }
}

fn dims_json(d: &GradedDims) -> serde_json::Value {
    json!(d)
}

fn validate(report: &mut Report, file: &std::path::Path, field: Option<Field>) -> Outcome {
    let (what, v) = match load(file, field)? {
        Document::Dga(r) => ("DGA", validate_dga(&r)),
        Document::Module(m) => ("DG module", validate_module(&m)),
        Document::Kt { .. } => ("k[T]-module", Default::default()),
    };
    if v.is_valid() {
        report.line(format!("valid {what}"));
    } else {
        report.line(format!("invalid {what}"));
        for x in &v.violations {
            report.line(format!("  {x}"));
        }
    }
    report
        .verdict(v.is_valid())
        .data(json!({ "kind": what, "violations": v.violations }));
    Ok(report.clone())
}

fn cohomology_cmd(report: &mut Report, file: &std::path::Path, field: Option<Field>) -> Outcome {
    match load(file, field)? {
        Document::Dga(r) => {
            let h = algebra_cohomology(&r);
            report.line("H R:").line(dims_table(&h.dims()));
            report.data(json!({ "object": "dga", "dims": dims_json(&h.dims()) }));
        }
        Document::Module(m) => {
            let h = cohomology(&m);
            report.line("H M:").line(dims_table(&h.dims()));
            report.line(format!("generators as an H R-module: {}", h.generator_count()));
            report.data(json!({
                "object": "dg_module",
                "dims": dims_json(&h.dims()),
                "generators": h.generator_count(),
            }));
        }
        Document::Kt { module, .. } => {
            let h = kt_cohomology(&module)?;
            let blocks = decompose(&h)?;
            report.line("H M:").line(dims_table(&h.dims()));
            report.data(json!({ "object": "kt_module", "dims": dims_json(&h.dims()), "blocks": blocks }));
        }
    }
    Ok(report.clone())
}

fn poincare(
    report: &mut Report,
    file: &std::path::Path,
    ext_window: Option<u32>,
    field: Option<Field>,
) -> Outcome {
    let r = load_algebra(file, field)?;
    let p = poincare_check(&r, ext_window)?;
    if p.ar_exists() {
        report.line(format!("AR triangles exist (both sides), d = {}", p.d));
    } else {
        report.line(format!("AR triangles do not exist, d = {}", p.d));
    }
    report.line("H R:").line(dims_table(&p.dims));
    let mut pairings = Vec::new();
    for w in &p.witness {
        let (a, b) = (w.matrix.rows(), w.matrix.cols());
        report.line(format!(
            "  H^{} × H^{} → H^{}: {a}x{b}, rank {}",
            w.degree,
            p.d - w.degree,
            p.d,
            w.rank
        ));
        pairings.push(json!({ "degree": w.degree, "rows": a, "cols": b, "rank": w.rank }));
    }
    if let Some(e) = &p.ext_window_check {
        report.line(format!(
            "Ext(k, R) on window {}: {} ({} on {})",
            e.window,
            if e.passed {
                "one k in degree d"
            } else {
                "not one k in degree d"
            },
            serde_json::to_string(&e.dims)?,
            range_text(&e.valid)
        ));
    }
    report.verdict(p.ar_exists()).data(json!({
        "d": p.d,
        "dims": dims_json(&p.dims),
        "left_perfect": p.left_perfect,
        "right_perfect": p.right_perfect,
        "pairings": pairings,
        "ext_window_check": p.ext_window_check,
    }));
    Ok(report.clone())
}

fn resolve(report: &mut Report, arg: &str, window: u32, field: Option<Field>) -> Outcome {
    let m = load_module(arg, field)?;
    let res = minimal_resolution(&m, window)?;
    report.line(format!(
        "minimal resolution from u = {} through degree {}{}",
        res.u(),
        res.top_degree(),
        if res.is_complete() { " (complete)" } else { "" }
    ));
    report
        .line("generators per degree:")
        .line(dims_table(&res.generator_degrees()));
    let gens: Vec<_> = res
        .generators()
        .iter()
        .map(|g| {
            let kind = match g.kind {
                GeneratorKind::Gamma => "gamma",
                GeneratorKind::Delta => "delta",
            };
            json!({ "degree": g.degree, "kind": kind })
        })
        .collect();
    let quasi = res.is_quasi_isomorphism_in_window()?;
    report.verdict(quasi && res.is_minimal()).data(json!({
        "u": res.u(),
        "window": window,
        "top_degree": res.top_degree(),
        "complete": res.is_complete(),
        "minimal": res.is_minimal(),
        "quasi_isomorphism_in_window": quasi,
        "generator_degrees": dims_json(&res.generator_degrees()),
        "generators": gens,
    }));
    Ok(report.clone())
}

fn translate(report: &mut Report, arg: &str, window: u32, field: Option<Field>) -> Outcome {
    let p = load_module(arg, field)?;
    let t = ar_translate(&p, window)?;
    let dims: GradedDims = t
        .module
        .cohomology_dims()
        .into_iter()
        .filter(|(i, _)| t.valid.contains(*i))
        .collect();
    report.line(format!("H(τP) on the certified range {}:", range_text(&t.valid)));
    report.line(dims_table(&dims));
    report.data(json!({ "dims": dims_json(&dims), "valid": t.valid }));
    Ok(report.clone())
}

fn rhom(report: &mut Report, m: &str, n: &str, window: u32, field: Option<Field>) -> Outcome {
    let (m, n) = (load_module(m, field)?, load_module(n, field)?);
    let h = rhom_cohomology(&m, &n, window)?;
    let dims: GradedDims = h.dims.into_iter().filter(|(i, _)| h.valid.contains(*i)).collect();
    report.line(format!(
        "H RHom(M, N) on the certified range {}:",
        range_text(&h.valid)
    ));
    report.line(dims_table(&dims));
    report.data(json!({ "dims": dims_json(&dims), "valid": h.valid }));
    Ok(report.clone())
}

fn kt_decompose(report: &mut Report, file: &std::path::Path, field: Option<Field>) -> Outcome {
    sphere_side(field)?;
    let Document::Kt { module, blocks } = load(file, field)? else {
        return Err(UsageError(format!(
            "{}: expected a kt_module document",
            file.display()
        )));
    };
    let plain = kt_cohomology(&module)?;
    let found = decompose(&plain)?;
    if module.differential().is_some() {
        report.line("decomposition of the cohomology:");
    }
    for (b, c) in found.iter() {
        report.line(format!(
            "  Σ^{} C_{}{}",
            b.j,
            b.m,
            if c > 1 { format!("  ×{c}") } else { String::new() }
        ));
    }
    if found.is_empty() {
        report.line("  (zero module)");
    }
    let agrees = blocks.as_ref().map(|b| *b == found);
    if let Some(a) = agrees {
        report.line(if a {
            "matches the recorded blocks"
        } else {
            "differs from the recorded blocks"
        });
        report.verdict(a);
    }
    report.data(json!({ "d": module.d(), "blocks": found, "matches_recorded": agrees }));
    Ok(report.clone())
}

fn label_json(l: &SphereIndecLabel) -> serde_json::Value {
    json!({ "d": l.d, "j": l.j, "m": l.m, "cohomology": dims_json(&indec_cohomology(l)) })
}

fn sphere_triangle(report: &mut Report, d: i32, j: i32, m: u32, field: Option<Field>) -> Outcome {
    sphere_side(field)?;
    let t = sphere_ar_triangle(&SphereIndecLabel::new(d, j, m))?;
    report.line(t.to_string());
    for l in std::iter::once(&t.left)
        .chain(&t.middle)
        .chain(std::iter::once(&t.right))
    {
        report
            .line(format!("H({l}):"))
            .line(dims_table(&indec_cohomology(l)));
    }
    report.data(json!({
        "left": label_json(&t.left),
        "middle": t.middle.iter().map(label_json).collect::<Vec<_>>(),
        "right": label_json(&t.right),
    }));
    Ok(report.clone())
}

fn sphere_verify(
    report: &mut Report,
    d: i32,
    single: Option<(i32, u32)>,
    jmax: i32,
    mmax: u32,
    field: Option<Field>,
) -> Outcome {
    sphere_side(field)?;
    let labels: Vec<(i32, u32)> = match single {
        Some(l) => vec![l],
        None => (-jmax..=jmax)
            .flat_map(|j| (0..=mmax).map(move |m| (j, m)))
            .collect(),
    };
    let mut failures = Vec::new();
    for &(j, m) in &labels {
        let t = sphere_ar_triangle(&SphereIndecLabel::new(d, j, m))?;
        let r = verify_ar_triangle(&t)?;
        if let Some(f) = &r.failure {
            report.line(format!("FAIL {t}: {f}"));
            failures.push(json!({ "j": j, "m": m, "failure": f }));
        } else if single.is_some() {
            report.line(format!("{t}"));
            report.line("middle cohomology:").line(dims_table(&r.computed));
        }
    }
    report.line(format!(
        "{} of {} triangles verified",
        labels.len() - failures.len(),
        labels.len()
    ));
    report.verdict(failures.is_empty()).data(json!({
        "d": d,
        "checked": labels.len(),
        "failures": failures,
    }));
    Ok(report.clone())
}

fn sphere_quiver(
    report: &mut Report,
    d: i32,
    (jmin, jmax, mmax): (i32, i32, u32),
    dot: Option<&std::path::Path>,
    field: Option<Field>,
) -> Outcome {
    sphere_side(field)?;
    let q = build_quiver(d, jmin, jmax, mmax)?;
    let comps = components(&q);
    let interior = q.interior();
    let za = comps.iter().all(|c| check_za_infinity(&q, c, &interior));
    let stable = check_stable_translation(&q, &interior);
    report.line(format!(
        "vertices: {}, arrows: {}",
        q.vertices().len(),
        q.arrow_count()
    ));
    report.line(format!("components: {}", comps.len()));
    report.line(format!("ZA∞ on the interior: {}", if za { "yes" } else { "no" }));
    report.line(format!(
        "stable translation quiver on the interior: {}",
        if stable { "yes" } else { "no" }
    ));
    if let Some(path) = dot {
        fs::write(path, to_dot(&q)).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        report.line(format!("DOT written to {}", path.display()));
    }
    let residues: BTreeMap<i32, usize> = comps
        .iter()
        .map(|c| (q.vertices()[c[0]].j.rem_euclid(d - 1), c.len()))
        .collect();
    report
        .verdict(za && stable && comps.len() as i32 == d - 1)
        .data(json!({
            "d": d,
            "vertices": q.vertices().len(),
            "arrows": q.arrow_count(),
            "components": comps.len(),
            "component_sizes_by_residue": residues,
            "za_infinity": za,
            "stable_translation": stable,
        }));
    Ok(report.clone())
}

fn endo(report: &mut Report, d: i32, (lo, hi): (i32, i32), field: Option<Field>) -> Outcome {
    sphere_side(field)?;
    let dims = endo_dga_cohomology(d, lo..=hi)?;
    let expected: GradedDims = [(0, 1), (d, 1)]
        .into_iter()
        .filter(|(i, _)| (lo..=hi).contains(i))
        .collect();
    report
        .line(format!("H End(F) on [{lo}, {hi}]:"))
        .line(dims_table(&dims));
    report
        .verdict(dims == expected)
        .data(json!({ "d": d, "range": [lo, hi], "dims": dims_json(&dims) }));
    Ok(report.clone())
}

fn selftest(report: &mut Report) -> Outcome {
    let results = dgar::selftest::run_all();
    for r in &results {
        report.line(r.line());
    }
    let ok = results.iter().all(|r| r.passed);
    report.verdict(ok).data(json!({ "criteria": results }));
    Ok(report.clone())
}

fn execute(cli: &Cli, report: &mut Report) -> Outcome {
    let f = cli.field;
    match &cli.command {
        Command::Validate { file } => validate(report, file, f),
        Command::Cohomology { file } => cohomology_cmd(report, file, f),
        Command::Poincare { file, ext_window } => poincare(report, file, *ext_window, f),
        Command::Resolve { module, window } => resolve(report, module, window.window, f),
        Command::ArTranslate { module, window } => translate(report, module, window.window, f),
        Command::Rhom { m, n, window } => rhom(report, m, n, window.window, f),
        Command::KtDecompose { file } => kt_decompose(report, file, f),
        Command::SphereTriangle { d, j, m } => sphere_triangle(report, *d, *j, *m, f),
        Command::SphereVerify { d, j, m, jmax, mmax } => {
            sphere_verify(report, *d, j.zip(*m), *jmax, *mmax, f)
        }
        Command::SphereQuiver {
            d,
            jmin,
            jmax,
            mmax,
            dot,
        } => sphere_quiver(report, *d, (*jmin, *jmax, *mmax), dot.as_deref(), f),
        Command::EndoCohomology { d, range } => endo(report, *d, *range, f),
        Command::Selftest => selftest(report),
    }
}

/// Runs one command line (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut report = Report::new(args.iter().skip(1).cloned().collect());
    match execute(&cli, &mut report) {
        Ok(r) => {
            let _ = write!(out, "{}", r.render());
            match r.verdict {
                Some(false) => EXIT_NEGATIVE,
                _ => EXIT_OK,
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
