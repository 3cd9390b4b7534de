//! Job descriptions and the pipeline behind the command-line tool.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use grassvar_poly::GbOptions;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::export::{export_cas, to_json, to_text, Dialect, Format, PolySystem};
use crate::grass::{oracle_suite, AffineResult, TauSystem};
use crate::lift::{ProjectiveLift, SaturationStatus};
use crate::presentation::Presentation;
use crate::skeleton::{critical_paths, enumerate_skeleta, SemisimpleSequence, Setting, Skeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Skeleta,
    Critical,
    GrassEqs,
    BigGrassEqs,
    SchubertEqs,
    ProjectiveEqs,
    Oracle,
    Export,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "skeleta" => Mode::Skeleta,
            "critical" => Mode::Critical,
            "grass-eqs" => Mode::GrassEqs,
            "big-grass-eqs" => Mode::BigGrassEqs,
            "schubert-eqs" => Mode::SchubertEqs,
            "projective-eqs" => Mode::ProjectiveEqs,
            "oracle" => Mode::Oracle,
            "export" => Mode::Export,
            other => return Err(Error::Unsupported(format!("mode `{other}`"))),
        })
    }
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Skeleta => "skeleta",
            Mode::Critical => "critical",
            Mode::GrassEqs => "grass-eqs",
            Mode::BigGrassEqs => "big-grass-eqs",
            Mode::SchubertEqs => "schubert-eqs",
            Mode::ProjectiveEqs => "projective-eqs",
            Mode::Oracle => "oracle",
            Mode::Export => "export",
        }
    }
}

/// Layer input: an explicit semisimple sequence or a dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layers {
    Sequence(SemisimpleSequence),
    DimVec(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub presentation: PathBuf,
    pub mode: Mode,
    pub layers: Option<Layers>,
    pub skeleton: Option<PathBuf>,
    pub setting: Setting,
    pub seed: u64,
    pub max_steps: Option<usize>,
    pub format: Format,
    pub out: PathBuf,
    pub points: usize,
    pub exec: Exec,
}

impl JobSpec {
    pub fn new(presentation: impl Into<PathBuf>, mode: Mode, out: impl Into<PathBuf>) -> Self {
        JobSpec {
            presentation: presentation.into(),
            mode,
            layers: None,
            skeleton: None,
            setting: Setting::Small,
            seed: 0,
            max_steps: GbOptions::default().max_steps,
            format: Format::Text,
            out: out.into(),
            points: 100,
            exec: Exec::default(),
        }
    }

    pub fn gb_options(&self) -> GbOptions {
        GbOptions { max_steps: self.max_steps }
    }

    fn validate(&self) -> Result<()> {
        let needs_skeleton = !matches!(self.mode, Mode::Skeleta | Mode::Oracle);
        if needs_skeleton && self.skeleton.is_none() {
            return Err(Error::MissingField("skeleton"));
        }
        if matches!(self.mode, Mode::Skeleta) && self.layers.is_none() {
            return Err(Error::MissingField("sseq or dimvec"));
        }
        if matches!(self.mode, Mode::Oracle) && self.layers.is_none() && self.skeleton.is_none() {
            return Err(Error::MissingField("sseq, dimvec or skeleton"));
        }
        Ok(())
    }
}

/// Named file contents produced by a job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub artifacts: Vec<(String, String)>,
    pub summary: String,
    pub success: bool,
}

impl Output {
    fn single(name: &str, content: String, summary: String) -> Self {
        Output { artifacts: vec![(name.to_string(), content)], summary, success: true }
    }
}

/// Reads the inputs, runs the job and writes its artifacts. A single
/// artifact goes to `out`; several go into `out` as a directory.
pub fn run(job: &JobSpec) -> Result<Output> {
    let pres = Presentation::parse(&fs::read_to_string(&job.presentation)?)?;
    let skeleton = match &job.skeleton {
        Some(p) => Some(Skeleton::parse(&fs::read_to_string(p)?, &pres)?),
        None => None,
    };
    let output = execute(job, &pres, skeleton.as_ref())?;
    write_artifacts(&job.out, &output.artifacts)?;
    Ok(output)
}

fn write_artifacts(out: &Path, artifacts: &[(String, String)]) -> Result<()> {
    if let [(_, content)] = artifacts {
        if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(out, content)?;
    } else {
        fs::create_dir_all(out)?;
        for (name, content) in artifacts {
            fs::write(out.join(name), content)?;
        }
    }
    Ok(())
}

/// Runs a job on already parsed inputs without touching the filesystem.
pub fn execute(job: &JobSpec, pres: &Presentation, skeleton: Option<&Skeleton>) -> Result<Output> {
    job.validate()?;
    match job.mode {
        Mode::Skeleta => skeleta(job, pres),
        Mode::Oracle => oracle(job, pres, skeleton),
        Mode::Critical => critical(job, pres, skeleton.unwrap()),
        Mode::GrassEqs => grass_eqs(job, pres, skeleton.unwrap(), Setting::Small),
        Mode::BigGrassEqs => grass_eqs(job, pres, skeleton.unwrap(), Setting::Big),
        Mode::SchubertEqs => schubert_eqs(job, pres, skeleton.unwrap()),
        Mode::ProjectiveEqs => projective_eqs(job, pres, skeleton.unwrap()),
        Mode::Export => export(job, pres, skeleton.unwrap()),
    }
}

fn sequences(layers: &Layers, pres: &Presentation) -> Vec<SemisimpleSequence> {
    match layers {
        Layers::Sequence(s) => vec![s.clone()],
        Layers::DimVec(d) => SemisimpleSequence::all_with_dimvec(d, pres.loewy() + 1),
    }
}

fn all_skeleta(job: &JobSpec, pres: &Presentation) -> Vec<Skeleton> {
    let layers = job.layers.as_ref().expect("validated");
    sequences(layers, pres).iter().flat_map(|s| enumerate_skeleta(s, pres, false, job.exec)).collect()
}

fn skeleta(job: &JobSpec, pres: &Presentation) -> Result<Output> {
    let found = all_skeleta(job, pres);
    let summary = format!("{} skeleta", found.len());
    match job.format {
        Format::Text => {
            let artifacts =
                found.iter().enumerate().map(|(k, s)| (format!("skeleton_{:03}.skel", k + 1), s.to_text(pres))).collect();
            Ok(Output { artifacts, summary, success: true })
        }
        Format::Json => {
            let texts: Vec<String> = found.iter().map(|s| s.to_text(pres)).collect();
            Ok(Output::single("skeleta.json", serde_json::to_string_pretty(&texts)? + "\n", summary))
        }
        other => Err(Error::Unsupported(format!("{other:?} output for skeleta"))),
    }
}

fn critical_section(pres: &Presentation, sigma: &Skeleton, setting: Setting) -> Result<(String, usize)> {
    let quiver = pres.quiver();
    let crit = critical_paths(sigma, pres, setting)?;
    let mut out = format!("# critical paths ({})\n", crit.len());
    for c in &crit {
        let companions: Vec<String> = c.companions.iter().map(|b| b.display(quiver)).collect();
        writeln!(out, "{}  {{{}}}", c.path.display(quiver), companions.join(", ")).unwrap();
    }
    Ok((out, crit.len()))
}

fn critical(job: &JobSpec, pres: &Presentation, sigma: &Skeleton) -> Result<Output> {
    let (text, n) = critical_section(pres, sigma, job.setting)?;
    match job.format {
        Format::Text => Ok(Output::single("critical.txt", text, format!("{n} critical paths"))),
        Format::Json => {
            let quiver = pres.quiver();
            let list: Vec<(String, Vec<String>)> = critical_paths(sigma, pres, job.setting)?
                .iter()
                .map(|c| (c.path.display(quiver), c.companions.iter().map(|b| b.display(quiver)).collect()))
                .collect();
            Ok(Output::single("critical.json", serde_json::to_string_pretty(&list)? + "\n", format!("{n} critical paths")))
        }
        other => Err(Error::Unsupported(format!("{other:?} output for critical paths"))),
    }
}

fn polynomial_output(
    job: &JobSpec,
    header: String,
    systems: &[PolySystem],
    primary: usize,
    primality: bool,
    summary: String,
) -> Result<Output> {
    let content = match job.format {
        Format::Text => {
            let mut out = header;
            for s in systems {
                out.push_str(&to_text(s));
            }
            out
        }
        Format::Json => to_json(job.mode.name(), systems, header.lines().map(str::to_string).collect())?,
        Format::M2 => export_cas(&systems[primary], Dialect::Macaulay2, primality),
        Format::Singular => export_cas(&systems[primary], Dialect::Singular, primality),
    };
    let ext = match job.format {
        Format::Text => "txt",
        Format::Json => "json",
        Format::M2 => "m2",
        Format::Singular => "sing",
    };
    Ok(Output::single(&format!("{}.{ext}", job.mode.name()), content, summary))
}

fn grass_eqs(job: &JobSpec, pres: &Presentation, sigma: &Skeleton, setting: Setting) -> Result<Output> {
    let tau = TauSystem::new(pres, sigma, setting)?;
    let (crit, _) = critical_section(pres, sigma, setting)?;
    let mut header = format!("# skeleton\n{}{crit}", sigma.to_text(pres));
    let raw = PolySystem::from_tau("tau", &tau);
    if setting == Setting::Big {
        let mentions = if tau.mentions_top_variables() { "yes" } else { "no" };
        writeln!(header, "# new top variables occur: {mentions}").unwrap();
    }
    let (systems, summary) = match tau.detect_affine_space() {
        AffineResult::Affine(cert) => {
            let free: Vec<String> = cert.free.iter().map(|v| v.to_string()).collect();
            writeln!(header, "# affine space of dimension {}\n# free: {}", cert.dimension(), free.join(" ")).unwrap();
            let eqs = PolySystem::new("grass", tau.variables(), cert.equations()).canonical();
            let summary = format!("{} equations, affine dimension {}", eqs.len(), cert.dimension());
            (vec![eqs, raw.canonical()], summary)
        }
        AffineResult::Empty => {
            writeln!(header, "# empty: a nonzero constant lies in the ideal").unwrap();
            (vec![raw.canonical()], "empty variety".to_string())
        }
        AffineResult::Inconclusive => {
            writeln!(header, "# no triangular form found").unwrap();
            let summary = format!("{} polynomials, not triangular", raw.len());
            (vec![raw.canonical()], summary)
        }
    };
    polynomial_output(job, header, &systems, 0, false, summary)
}

fn lift_header(pres: &Presentation, sigma: &Skeleton, lift: &ProjectiveLift) -> String {
    let quiver = pres.quiver();
    let exp = &lift.expansion;
    let mut out = format!("# skeleton\n{}", sigma.to_text(pres));
    writeln!(out, "# basis B = {}", lift.basis.display(pres)).unwrap();
    writeln!(out, "# d = {}, u = {}, v = {}, a = {}", lift.basis.d(), lift.basis.u(), lift.basis.v(), lift.basis.a())
        .unwrap();
    let n0: Vec<String> = lift.reduced.n0.iter().map(|(i, j)| format!("({i},{j})")).collect();
    writeln!(out, "# N0 = {}", n0.join(" ")).unwrap();
    for dep in &lift.reduced.dependent {
        writeln!(out, "# dependent critical path {}", dep.path.display(quiver)).unwrap();
    }
    writeln!(out, "# plucker coordinates: {} ({} nonzero)", exp.num_coordinates(), exp.rho.len()).unwrap();
    for (t, p) in &exp.rho {
        let t: Vec<String> = t.iter().map(u32::to_string).collect();
        writeln!(out, "# rho[{}] = {p}", t.join(",")).unwrap();
    }
    for ((k, l), e) in &exp.signs {
        writeln!(out, "# eps[{k},{l}] = {e:+}  Yhat[{k},{l}] = {}", exp.y_hat(*k, *l)).unwrap();
    }
    writeln!(out, "# Z = {}", exp.z()).unwrap();
    out
}

fn schubert_eqs(job: &JobSpec, pres: &Presentation, sigma: &Skeleton) -> Result<Output> {
    let lift = ProjectiveLift::compute(pres, sigma)?;
    let header = lift_header(pres, sigma, &lift);
    let vars = lift.expansion.tuples().iter().map(|t| grassvar_poly::Var::pluecker(t)).collect();
    let sys = PolySystem::new("schubert", vars, lift.schubert.generators());
    let summary = format!("{} Schubert-cell generators", sys.len());
    polynomial_output(job, header, &[sys], 0, false, summary)
}

fn projective_eqs(job: &JobSpec, pres: &Presentation, sigma: &Skeleton) -> Result<Output> {
    let lift = ProjectiveLift::compute(pres, sigma)?;
    let ideal = lift.saturate(&job.gb_options())?;
    let mut header = lift_header(pres, sigma, &lift);
    let status = match ideal.status {
        SaturationStatus::Saturated => "saturated",
        SaturationStatus::GeneratorsOnly => "generators only (step limit reached, not saturated)",
    };
    writeln!(header, "# status: {status}").unwrap();
    if let Some(s) = ideal.homogenized_sufficient {
        writeln!(header, "# homogenized generators already saturated: {}", if s { "yes" } else { "no" }).unwrap();
    }
    let vars: Vec<_> = lift.expansion.tuples().iter().map(|t| grassvar_poly::Var::pluecker(t)).collect();
    let sys = PolySystem::new("closure", vars, ideal.generators.clone()).canonical();
    let summary = format!("{} homogeneous generators, {status}", sys.len());
    let mut out = polynomial_output(job, header, &[sys], 0, true, summary)?;
    out.success = ideal.status == SaturationStatus::Saturated;
    Ok(out)
}

fn export(job: &JobSpec, pres: &Presentation, sigma: &Skeleton) -> Result<Output> {
    let dialect = match job.format {
        Format::Singular => Dialect::Singular,
        _ => Dialect::Macaulay2,
    };
    let (sys, primality) = match job.setting {
        Setting::Small => (PolySystem::from_tau("tau", &TauSystem::new(pres, sigma, Setting::Small)?), false),
        Setting::Big => {
            let lift = ProjectiveLift::compute(pres, sigma)?;
            let ideal = lift.saturate(&job.gb_options())?;
            if ideal.status != SaturationStatus::Saturated {
                return Err(Error::Poly(grassvar_poly::PolyError::StepLimit(job.max_steps.unwrap_or(0))));
            }
            let vars = lift.expansion.tuples().iter().map(|t| grassvar_poly::Var::pluecker(t)).collect();
            (PolySystem::new("closure", vars, ideal.generators), true)
        }
    };
    let script = export_cas(&sys, dialect, primality);
    let ext = if dialect == Dialect::Singular { "sing" } else { "m2" };
    let summary = format!("{} generators over {} variables", sys.canonical().len(), sys.all_variables().len());
    Ok(Output::single(&format!("export.{ext}"), script, summary))
}

fn oracle(job: &JobSpec, pres: &Presentation, skeleton: Option<&Skeleton>) -> Result<Output> {
    let list = match (&job.layers, skeleton) {
        (Some(_), _) => all_skeleta(job, pres),
        (None, Some(s)) => vec![s.clone()],
        (None, None) => unreachable!("validated"),
    };
    let report = oracle_suite(pres, &list, job.points, job.seed, job.exec);
    let mut text = format!(
        "skeleta: {}\ntriangular: {}\nempty: {}\ninconclusive: {}\npoints passed: {}/{}\n",
        report.skeleta, report.triangular, report.empty, report.inconclusive, report.passed, report.points
    );
    for f in &report.failures {
        writeln!(text, "FAIL {f}").unwrap();
    }
    let summary = format!("oracle: {}/{} points passed over {} triangular skeleta", report.passed, report.points, report.triangular);
    let mut out = Output::single("oracle.txt", text, summary);
    out.success = report.all_passed();
    Ok(out)
}
