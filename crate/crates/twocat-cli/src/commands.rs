//! The command surface.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twocat::category::{validate, TwoCategory, TwoFunctor};
use twocat::comma::{comma, Side};
use twocat::grothendieck::grothendieck;
use twocat::hocolim::hocolim;
use twocat::homology::{homology, normalized_chain_complex};
use twocat::nerves::{diag_nerve, nerve_category, wbar_double_nerve, wbar_repackaging};
use twocat::simplicial::{
    check_simplicial_identities, verify_iso, SimplicialError, Truncation, DEFAULT_BUDGET,
};

use crate::report::Report;
use crate::resolve::{self, Manifest};
use crate::suites::{self, Abort, Items, Settings};

pub const DEFAULT_TRUNCATION: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "twocat",
    version,
    about = "Nerves, homotopy colimits and homotopy fibres of finite strict 2-categories"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation bound N
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Write the JSON report here
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest number of simplices allowed in one level
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct CategoryArgs {
    pub manifest: PathBuf,
    /// Restrict to one 2-category (default: all)
    #[arg(long)]
    pub category: Option<String>,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    pub manifest: PathBuf,
    /// Restrict to one diagram (default: all)
    #[arg(long)]
    pub diagram: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Over,
    Under,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::Over => Side::Over,
            SideArg::Under => Side::Under,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every 2-category, functor, diagram and morphism
    Validate { manifest: PathBuf },
    /// Nerves of locally discrete 2-categories
    Nerve(CategoryArgs),
    /// Codiagonals of double nerves, with the repackaging check
    Wbar(CategoryArgs),
    /// Diagonals of double nerves
    Diag(CategoryArgs),
    /// Grothendieck constructions of diagrams
    Groth(DiagramArgs),
    /// Homotopy colimits of diagrams
    Hocolim(DiagramArgs),
    /// Homotopy-fibre 2-categories of a 2-functor, or slices of a 2-category
    Comma {
        manifest: PathBuf,
        #[arg(long, conflicts_with = "category")]
        functor: Option<String>,
        #[arg(long)]
        category: Option<String>,
        /// Object of the target (default: all)
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Integral homology of the diagonal double nerve
    Homology {
        manifest: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, conflicts_with = "diagram")]
        category: Option<String>,
        /// Use the Grothendieck construction of this diagram
        #[arg(long)]
        diagram: Option<String>,
        /// Use the slice of the category at this object
        #[arg(long, requires = "category")]
        slice: Option<String>,
        #[arg(long, value_enum, default_value = "over")]
        side: SideArg,
    },
    /// Run a verification suite
    Verify {
        manifest: PathBuf,
        /// identities, iso112, iso114, retractions, oplax, contractibility, invariance or all
        #[arg(conflicts_with = "suite_flag")]
        suite: Option<String>,
        #[arg(long = "suite")]
        suite_flag: Option<String>,
    },
    /// Write the bundled corpus into the directory given by --out
    Corpus,
}

/// The result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn input(errors: Vec<String>) -> Self {
        let mut report = Report::new("input", 0);
        for e in &errors {
            report.fail("input", e.clone());
        }
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: errors.iter().map(|e| format!("error: {e}\n")).collect(),
            report: Some(report),
        }
    }

    fn from_report(report: Report) -> Self {
        let code = if report.passed() { 0 } else { 1 };
        Outcome {
            code,
            stdout: report.to_text(),
            stderr: String::new(),
            report: Some(report),
        }
    }
}

enum Failure {
    Input(Vec<String>),
    Abort(Abort),
}

impl From<Abort> for Failure {
    fn from(a: Abort) -> Self {
        Failure::Abort(a)
    }
}

impl From<SimplicialError> for Failure {
    fn from(e: SimplicialError) -> Self {
        match e {
            SimplicialError::BudgetExceeded { .. } => Failure::Abort(Abort::Budget(e.to_string())),
            other => Failure::Input(vec![other.to_string()]),
        }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(vec![msg.into()])
}

fn load(path: &Path) -> Result<Manifest, Failure> {
    resolve::parse(path).map_err(|es| Failure::Input(es.iter().map(ToString::to_string).collect()))
}

/// Runs a parsed command line, writing the report to `--out` when asked.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Corpus => corpus(cli),
        other => dispatch(cli, other),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Input(errors)) => Outcome::input(errors),
        Err(Failure::Abort(a)) => Outcome::input(vec![a.to_string()]),
    };
    if let (Some(out), Some(report), false) = (
        &cli.out,
        &outcome.report,
        matches!(cli.command, Command::Corpus),
    ) {
        if let Err(e) = std::fs::write(out, report.to_json()) {
            return Outcome::input(vec![format!("cannot write {}: {e}", out.display())]);
        }
    }
    outcome
}

/// Parses `args` (without the program name) and runs them.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("twocat")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            Outcome {
                code,
                stdout,
                stderr,
                report: None,
            }
        }
    }
}

fn corpus(cli: &Cli) -> Result<Outcome, Failure> {
    let dir = cli
        .out
        .as_ref()
        .ok_or_else(|| input("corpus needs --out DIR"))?;
    let written = crate::corpus::export(dir)
        .map_err(|e| input(format!("cannot write {}: {e}", dir.display())))?;
    Ok(Outcome {
        code: 0,
        stdout: written
            .iter()
            .map(|p| format!("wrote {}\n", p.display()))
            .collect(),
        stderr: String::new(),
        report: None,
    })
}

fn dispatch(cli: &Cli, command: &Command) -> Result<Outcome, Failure> {
    let truncation = |m: &Manifest| {
        cli.trunc
            .or(m.spec.truncation)
            .unwrap_or(DEFAULT_TRUNCATION)
    };
    let t = |m: &Manifest| Truncation::new(truncation(m)).with_budget(cli.budget);
    match command {
        Command::Validate { manifest } => {
            let m = load(manifest)?;
            Ok(Outcome::from_report(suites::validate_items(
                &m,
                &Items::all(&m),
                truncation(&m),
            )))
        }
        Command::Nerve(a) | Command::Wbar(a) | Command::Diag(a) => {
            let m = load(&a.manifest)?;
            let names = pick(&m.categories, a.category.as_deref(), "category")?;
            require(
                &m,
                &Items {
                    categories: names.clone(),
                    ..Items::default()
                },
            )?;
            let which = match command {
                Command::Nerve(_) => "nerve",
                Command::Wbar(_) => "wbar",
                _ => "diag",
            };
            let mut r = Report::new(which, truncation(&m));
            for n in names {
                let c = m.category(&n).expect("picked").clone();
                simplicial_summary(&mut r, which, &n, &c, t(&m))?;
            }
            Ok(Outcome::from_report(r))
        }
        Command::Groth(a) | Command::Hocolim(a) => {
            let m = load(&a.manifest)?;
            let names = pick(&m.diagrams, a.diagram.as_deref(), "diagram")?;
            require(
                &m,
                &Items {
                    diagrams: names.clone(),
                    ..Items::default()
                },
            )?;
            let which = if matches!(command, Command::Groth(_)) {
                "groth"
            } else {
                "hocolim"
            };
            let mut r = Report::new(which, truncation(&m));
            for n in names {
                let d = m.diagram(&n).expect("picked").clone();
                if which == "groth" {
                    let g = grothendieck(&d);
                    r.validation(
                        format!("groth/{n}"),
                        &validate(&g.category),
                        counts(&g.category),
                    );
                } else {
                    let h = hocolim(&d, truncation(&m));
                    let check = h.simplicial.check();
                    for (p, level) in h.simplicial.levels.iter().enumerate() {
                        r.pass(format!("hocolim/{n}/level {p}"), counts(level));
                    }
                    r.validation(
                        format!("hocolim/{n}/structure"),
                        &check,
                        "faces and degeneracies are 2-functors",
                    );
                }
            }
            Ok(Outcome::from_report(r))
        }
        Command::Comma {
            manifest,
            functor,
            category,
            object,
            side,
        } => {
            let m = load(manifest)?;
            let (label, f) = match (functor, category) {
                (Some(n), _) => {
                    require(
                        &m,
                        &Items {
                            functors: vec![n.clone()],
                            ..Items::default()
                        },
                    )?;
                    (
                        n.clone(),
                        m.functor(n)
                            .ok_or_else(|| input(format!("unknown functor `{n}`")))?
                            .clone(),
                    )
                }
                (None, Some(n)) => {
                    require(
                        &m,
                        &Items {
                            categories: vec![n.clone()],
                            ..Items::default()
                        },
                    )?;
                    let c = m
                        .category(n)
                        .ok_or_else(|| input(format!("unknown category `{n}`")))?;
                    (n.clone(), TwoFunctor::identity(c))
                }
                (None, None) => return Err(input("comma needs --functor or --category")),
            };
            let objects = objects_of(&f.target, object.as_deref())?;
            let sides = side.map_or(vec![Side::Over, Side::Under], |s| vec![s.side()]);
            let mut r = Report::new("comma", truncation(&m));
            for &x in &objects {
                for &s in &sides {
                    let k = comma(&f, x, s);
                    let name =
                        format!("comma/{label}/{}/{}", f.target.object_name(x), side_name(s));
                    r.validation(name, &validate(k.category()), counts(k.category()));
                }
            }
            Ok(Outcome::from_report(r))
        }
        Command::Homology {
            manifest,
            degree,
            category,
            diagram,
            slice,
            side,
        } => {
            let m = load(manifest)?;
            let trunc = truncation(&m);
            if *degree + 1 > trunc {
                return Err(input(format!(
                    "degree {degree} needs a truncation of at least {}",
                    degree + 1
                )));
            }
            let (label, c): (String, Arc<TwoCategory>) = match (category, diagram) {
                (Some(n), _) => {
                    require(
                        &m,
                        &Items {
                            categories: vec![n.clone()],
                            ..Items::default()
                        },
                    )?;
                    let c = m
                        .category(n)
                        .ok_or_else(|| input(format!("unknown category `{n}`")))?
                        .clone();
                    match slice {
                        None => (n.clone(), c),
                        Some(o) => {
                            let x = objects_of(&c, Some(o))?[0];
                            let k = comma(&TwoFunctor::identity(&c), x, side.side());
                            (
                                format!("{n}/{o}/{}", side_name(side.side())),
                                k.category().clone(),
                            )
                        }
                    }
                }
                (None, Some(n)) => {
                    require(
                        &m,
                        &Items {
                            diagrams: vec![n.clone()],
                            ..Items::default()
                        },
                    )?;
                    let d = m
                        .diagram(n)
                        .ok_or_else(|| input(format!("unknown diagram `{n}`")))?;
                    (format!("groth/{n}"), grothendieck(d).category)
                }
                (None, None) => return Err(input("homology needs --category or --diagram")),
            };
            let x = diag_nerve(&c, t(&m))?;
            let cc = normalized_chain_complex(&x);
            let h = homology(&cc, *degree).map_err(|e| input(e.to_string()))?;
            let torsion = if h.torsion.is_empty() {
                "none".to_string()
            } else {
                h.torsion
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let mut r = Report::new("homology", trunc);
            r.pass(
                format!("homology/{label}/H{degree}"),
                format!("H{degree} = {h} (rank {}, torsion {torsion})", h.betti),
            );
            Ok(Outcome::from_report(r))
        }
        Command::Verify {
            manifest,
            suite,
            suite_flag,
        } => {
            let m = load(manifest)?;
            let chosen = suite.clone().or_else(|| suite_flag.clone());
            let names = match chosen {
                Some(s) => vec![s],
                None if m.spec.suites.is_empty() => vec!["all".to_string()],
                None => m.spec.suites.clone(),
            };
            let settings = Settings {
                truncation: cli.trunc,
                budget: cli.budget,
            };
            let mut reports = Vec::new();
            for s in &names {
                reports.push(suites::run(&m, s, settings)?);
            }
            let mut report = reports.remove(0);
            for extra in reports {
                report.suite = format!("{}+{}", report.suite, extra.suite);
                report.checks.extend(extra.checks);
            }
            Ok(Outcome::from_report(report))
        }
        Command::Corpus => unreachable!("handled by execute"),
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Over => "over",
        Side::Under => "under",
    }
}

fn counts(c: &TwoCategory) -> String {
    let (o, a, t) = c.counts();
    format!("{o} objects, {a} 1-cells, {t} 2-cells")
}

fn pick<T>(
    items: &[resolve::Named<T>],
    name: Option<&str>,
    kind: &str,
) -> Result<Vec<String>, Failure> {
    match name {
        None => Ok(items.iter().map(|x| x.name.clone()).collect()),
        Some(n) if items.iter().any(|x| x.name == n) => Ok(vec![n.to_string()]),
        Some(n) => Err(input(format!("unknown {kind} `{n}`"))),
    }
}

fn objects_of(c: &TwoCategory, name: Option<&str>) -> Result<Vec<usize>, Failure> {
    match name {
        None => Ok((0..c.object_count()).collect()),
        Some(n) => c
            .object_by_name(n)
            .map(|x| vec![x])
            .ok_or_else(|| input(format!("unknown object `{n}`"))),
    }
}

/// Fails with an input error unless the named items validate.
fn require(m: &Manifest, items: &Items) -> Result<(), Failure> {
    let r = suites::validate_items(m, items, 0);
    let errors: Vec<String> = r
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(Failure::Input(errors))
    }
}

fn simplicial_summary(
    r: &mut Report,
    which: &str,
    name: &str,
    c: &Arc<TwoCategory>,
    t: Truncation,
) -> Result<(), Failure> {
    let x = match which {
        "nerve" => {
            if !c.is_locally_discrete() {
                return Err(input(format!(
                    "`{name}` has non-identity 2-cells; use diag or wbar"
                )));
            }
            nerve_category(c, t)?
        }
        "wbar" => wbar_double_nerve(c, t)?,
        _ => diag_nerve(c, t)?,
    };
    for n in 0..=x.bound() {
        r.pass(
            format!("{which}/{name}/level {n}"),
            format!("{} simplices", x.len(n)),
        );
    }
    r.validation(
        format!("{which}/{name}/identities"),
        &check_simplicial_identities(&x),
        "simplicial identities hold",
    );
    if which == "wbar" {
        let f = wbar_repackaging(c, t)?;
        let mut v = f.check();
        if !verify_iso(&f) {
            v.push("repackaging bijection", "not bijective on every level");
        }
        r.validation(
            format!("wbar/{name}/repackaging"),
            &v,
            "the codiagonal of the double nerve is isomorphic to it",
        );
    }
    Ok(())
}
