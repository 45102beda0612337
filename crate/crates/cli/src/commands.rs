use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use stone_groupoid::constructions::{
    bad_set, check_separation, collapse, normal_basis, normal_core, quotient, reconstruct, separating_family,
    skeletal_replacement, skeletal_replacement_tower, tower_kernels, van_dantzig, ReconstructionWitness, SeparatorKind,
    Unseparated, WideSubgroupoid,
};
use stone_groupoid::generators::{generate, Generated, GeneratorKind, GeneratorSpec};
use stone_groupoid::realization::{
    pipeline, realize_finite, realize_tower, AnimaPresentation, LimitCommutation, LimitWitness, PipelineOutput,
};
use stone_groupoid::{
    equivalence_oracle_with_bound, internal_essentially_surjective, internal_fully_faithful, whitehead_equivalence,
    Error, FiniteGroupoid, FunctorMaps, GroupoidFunctor, GroupoidTower, DEFAULT_ORACLE_BOUND,
};

use crate::document::{
    BasisDocument, Document, FamilyDocument, Finding, FunctorDocument, GroupDocument, GroupoidDocument,
    PartitionDocument, PresentationDocument, ReportDocument, SeparatorDocument, SubsetDocument, ThreadsDocument,
    TowerDocument, TraceDocument, VanDantzigDocument, VanDantzigSets, FORMAT_VERSION,
};
use crate::error::CliError;
use crate::validate::validate;

/// Environment variable overriding the size cap of the brute-force
/// equivalence oracle.
pub const ORACLE_BOUND_VAR: &str = "STONE_GROUPOID_ORACLE_BOUND";

#[derive(Parser, Debug)]
#[command(name = "stone-groupoid", version, about = "Finite groupoids, towers and their realizations")]
pub struct Cli {
    /// Write intermediate objects of the run to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub trace: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check any document; exits 1 when a condition fails.
    Validate {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Connected components of a groupoid.
    Pi0 {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Isotropy group at an object.
    Isotropy {
        #[arg(long)]
        object: usize,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Skeletal replacement of a groupoid or a tower.
    Skeletonize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Extract an open wide subgroupoid inside a neighborhood of the units.
    Vandantzig {
        #[arg(long, value_name = "FILE")]
        neighborhood: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Largest normal wide subgroupoid inside a wide subgroupoid.
    Core {
        #[arg(long, value_name = "FILE")]
        subgroupoid: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Quotient of a skeletal groupoid by a normal wide subgroupoid.
    Quotient {
        #[arg(long, value_name = "FILE")]
        normal: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// All normal wide subgroupoids, or the kernels of a skeletal tower.
    Basis {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Retraction onto the isotropy group at an object.
    Collapse {
        #[arg(long)]
        object: usize,
        #[arg(default_value = "-")]
        input: String,
    },
    /// A separating family of functors to finite groupoids.
    Separate {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Compare a skeletal groupoid with the limit of its quotients.
    Reconstruct {
        /// Basis document; defaults to every normal wide subgroupoid.
        #[arg(long, value_name = "FILE")]
        basis: Option<String>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Components and fundamental groups of a groupoid or tower.
    Realize {
        /// Run the full pipeline instead of realizing the skeleton directly.
        #[arg(long)]
        pipeline: bool,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Validate, extract, skeletonize, quotient, reconstruct and realize.
    Pipeline {
        #[arg(long, value_name = "FILE")]
        neighborhood: Option<String>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Decide whether a functor is an equivalence by every criterion.
    CheckEquiv {
        #[arg(long, value_name = "FILE")]
        functor: String,
    },
    /// Generate an example groupoid or tower.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        components: Option<usize>,
        #[arg(long)]
        max_morphisms: Option<usize>,
    },
    /// Threads of objects and components of a tower up to a depth.
    Threads {
        #[arg(long)]
        depth: usize,
        #[arg(default_value = "-")]
        input: String,
    },
}

/// What a command produced: the main document, an optional trace, and
/// whether the command counts as failed.
struct Outcome {
    document: Document,
    trace: Option<TraceDocument>,
    exit: i32,
}

impl Outcome {
    fn ok(document: Document) -> Self {
        Outcome {
            document,
            trace: None,
            exit: 0,
        }
    }

    fn traced(document: Document, trace: TraceDocument) -> Self {
        Outcome {
            document,
            trace: Some(trace),
            exit: 0,
        }
    }
}

/// Runs one command line. Reads `-` inputs from `stdin`; returns the exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let bound = std::env::var(ORACLE_BOUND_VAR).ok();
    run_with_bound(args, bound.as_deref(), stdin, stdout, stderr)
}

/// [`run`] with the oracle bound override passed explicitly instead of read
/// from the environment.
pub fn run_with_bound<I, T>(
    args: I,
    bound: Option<&str>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = oracle_bound(bound).and_then(|bound| {
        let mut ctx = Context { stdin, bound };
        execute(&cli.command, &mut ctx)
    });
    match result {
        Ok(outcome) => {
            if let (Some(path), Some(trace)) = (&cli.trace, &outcome.trace) {
                if let Err(e) = std::fs::write(path, Document::Trace(trace.clone()).render()) {
                    let _ = writeln!(stderr, "error: {}", CliError::io(&path.display().to_string(), e));
                    return 2;
                }
            }
            if stdout.write_all(outcome.document.render().as_bytes()).is_err() {
                return 2;
            }
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn oracle_bound(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_ORACLE_BOUND),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{ORACLE_BOUND_VAR} must be a non-negative integer, got `{v}`"))),
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    bound: usize,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<Document, CliError> {
        let text = if path == "-" {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(|e| CliError::io("<stdin>", e))?;
            text
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?
        };
        Document::parse(&text)
    }

    fn groupoid(&mut self, path: &str) -> Result<FiniteGroupoid, CliError> {
        match self.read(path)? {
            Document::Groupoid(g) => g.to_groupoid(),
            other => Err(wrong_kind("groupoid", &other)),
        }
    }

    fn subset(&mut self, path: &str, universe: usize) -> Result<stone_groupoid::constructions::MorphismSet, CliError> {
        match self.read(path)? {
            Document::Subset(s) => s.to_set(universe),
            other => Err(wrong_kind("subset", &other)),
        }
    }
}

fn wrong_kind(expected: &str, found: &Document) -> CliError {
    CliError::Format(format!("expected a {expected} document, found `{}`", found.kind()))
}

/// A groupoid or a tower, for commands that take either.
enum Input {
    Groupoid(FiniteGroupoid),
    Tower(GroupoidTower),
}

fn groupoid_or_tower(ctx: &mut Context<'_>, path: &str) -> Result<Input, CliError> {
    match ctx.read(path)? {
        Document::Groupoid(g) => Ok(Input::Groupoid(g.to_groupoid()?)),
        Document::Tower(t) => Ok(Input::Tower(t.to_tower()?)),
        other => Err(wrong_kind("groupoid or tower", &other)),
    }
}

fn execute(command: &Command, ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { input } => {
            let report = validate(&ctx.read(input)?)?;
            let exit = if report.passed { 0 } else { 1 };
            Ok(Outcome {
                document: Document::Report(report),
                trace: None,
                exit,
            })
        }
        Command::Pi0 { input } => {
            let parts = ctx.groupoid(input)?.pi0();
            Ok(Outcome::ok(Document::Partition(PartitionDocument {
                version: FORMAT_VERSION,
                components: parts.count(),
                component_of: parts.component_of,
                representatives: parts.representatives,
            })))
        }
        Command::Isotropy { object, input } => {
            let g = ctx.groupoid(input)?;
            let group = g.isotropy(*object).map_err(|e| CliError::domain("isotropy", e))?;
            Ok(Outcome::ok(Document::Group(GroupDocument {
                object: Some(*object),
                elements: Some(g.loops(*object)),
                ..GroupDocument::from_group(&group)
            })))
        }
        Command::Skeletonize { input } => skeletonize(groupoid_or_tower(ctx, input)?),
        Command::Vandantzig { neighborhood, input } => {
            let g = ctx.groupoid(input)?;
            let u = ctx.subset(neighborhood, g.num_morphisms())?;
            let (h, trace) = van_dantzig(&g, &u).map_err(|e| CliError::domain("vandantzig", e))?;
            let mut t = TraceDocument::new("vandantzig");
            t.push(
                "subgroupoid",
                None,
                Document::Groupoid(GroupoidDocument::from_groupoid(&h.to_groupoid(&g).groupoid)),
            );
            Ok(Outcome::traced(
                Document::Vandantzig(VanDantzigDocument {
                    version: FORMAT_VERSION,
                    universe: g.num_morphisms(),
                    neighborhood: u.to_vec(),
                    subgroupoid: h.morphisms().to_vec(),
                    trace: VanDantzigSets::from(&trace),
                }),
                t,
            ))
        }
        Command::Core { subgroupoid, input } => {
            let x = ctx.groupoid(input)?;
            let set = ctx.subset(subgroupoid, x.num_morphisms())?;
            let h = WideSubgroupoid::new(&x, set).map_err(|e| CliError::domain("core", e))?;
            let core = normal_core(&x, &h).map_err(|e| CliError::domain("core", e))?;
            let mut t = TraceDocument::new("core");
            t.push("bad-set", None, Document::Subset(SubsetDocument::from_set(&bad_set(&x, &h))));
            Ok(Outcome::traced(Document::Subset(SubsetDocument::from_set(core.morphisms())), t))
        }
        Command::Quotient { normal, input } => {
            let x = ctx.groupoid(input)?;
            let set = ctx.subset(normal, x.num_morphisms())?;
            let n = WideSubgroupoid::new(&x, set).map_err(|e| CliError::domain("quotient", e))?;
            let q = quotient(&x, &n).map_err(|e| CliError::domain("quotient", e))?;
            let mut t = TraceDocument::new("quotient");
            t.push(
                "projection",
                None,
                Document::Functor(FunctorDocument::new(&x, &q.quotient, &q.projection)),
            );
            Ok(Outcome::traced(Document::Groupoid(GroupoidDocument::from_groupoid(&q.quotient)), t))
        }
        Command::Basis { input } => {
            let (universe, members) = match groupoid_or_tower(ctx, input)? {
                Input::Groupoid(x) => (
                    x.num_morphisms(),
                    normal_basis(&x).map_err(|e| CliError::domain("basis", e))?,
                ),
                Input::Tower(t) => (
                    t.top().num_morphisms(),
                    tower_kernels(&t).map_err(|e| CliError::domain("basis", e))?,
                ),
            };
            Ok(Outcome::ok(Document::Basis(BasisDocument::from_members(universe, &members))))
        }
        Command::Collapse { object, input } => {
            let e = ctx.groupoid(input)?;
            let m = collapse(&e, *object).map_err(|err| CliError::domain("collapse", err))?;
            Ok(Outcome::ok(Document::Functor(FunctorDocument::new(&e, &m.target, &m.maps))))
        }
        Command::Separate { input } => {
            let e = ctx.groupoid(input)?;
            let family = separating_family(&e).map_err(|err| CliError::domain("separate", err))?;
            let witness = check_separation(&e, &family).map(|u| match u {
                Unseparated::Objects(a, b) => Finding::failed("objects-identified", vec![a, b]),
                Unseparated::Morphisms(a, b) => Finding::failed("morphisms-identified", vec![a, b]),
            });
            let members = family
                .iter()
                .map(|s| {
                    let (construction, block, object) = match &s.kind {
                        SeparatorKind::Partition { block } => ("partition", Some(block.clone()), None),
                        SeparatorKind::Collapse { object } => ("collapse", None, Some(*object)),
                    };
                    SeparatorDocument {
                        construction: construction.into(),
                        block,
                        object,
                        target: GroupoidDocument::from_groupoid(&s.mapped.target),
                        obj_map: s.mapped.maps.obj_map.clone(),
                        mor_map: s.mapped.maps.mor_map.clone(),
                    }
                })
                .collect();
            Ok(Outcome::ok(Document::Family(FamilyDocument {
                version: FORMAT_VERSION,
                separates: witness.is_none(),
                witness,
                members,
            })))
        }
        Command::Reconstruct { basis, input } => {
            let x = ctx.groupoid(input)?;
            let members = match basis {
                None => normal_basis(&x).map_err(|e| CliError::domain("reconstruct", e))?,
                Some(path) => {
                    let sets = match ctx.read(path)? {
                        Document::Basis(b) => b.to_sets(x.num_morphisms())?,
                        other => return Err(wrong_kind("basis", &other)),
                    };
                    sets.into_iter()
                        .map(|s| WideSubgroupoid::new(&x, s).map_err(|e| CliError::domain("reconstruct", e)))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            let r = reconstruct(&x, &members).map_err(|e| CliError::domain("reconstruct", e))?;
            Ok(Outcome::ok(Document::Report(reconstruction_report(&r))))
        }
        Command::Realize { pipeline: true, input } => run_pipeline(ctx, input, None),
        Command::Realize { pipeline: false, input } => {
            let presentation = match groupoid_or_tower(ctx, input)? {
                Input::Groupoid(g) => AnimaPresentation {
                    levels: vec![realize_finite(&skeletal_replacement(&g).skeleton)
                        .map_err(|e| CliError::domain("realize", e))?],
                    transitions: Vec::new(),
                },
                Input::Tower(t) => {
                    let s = skeletal_replacement_tower(&t).map_err(|e| CliError::domain("skeleton", e))?;
                    realize_tower(&s.tower).map_err(|e| CliError::domain("realize", e))?
                }
            };
            Ok(Outcome::ok(Document::Presentation(PresentationDocument::from_presentation(
                &presentation,
            ))))
        }
        Command::Pipeline { neighborhood, input } => run_pipeline(ctx, input, neighborhood.as_deref()),
        Command::CheckEquiv { functor } => {
            let doc = match ctx.read(functor)? {
                Document::Functor(f) => f,
                other => return Err(wrong_kind("functor", &other)),
            };
            let source = doc.source.to_groupoid()?;
            let target = doc.target.to_groupoid()?;
            let maps = doc.maps();
            let f = GroupoidFunctor::new(&source, &target, &maps).map_err(|e| CliError::domain("parse", e))?;
            Ok(Outcome::ok(Document::Report(equivalence_report(&f, ctx.bound))))
        }
        Command::Gen {
            kind,
            p,
            depth,
            n,
            seed,
            components,
            max_morphisms,
        } => {
            let kind = GeneratorKind::from_name(kind).ok_or_else(|| {
                let known: Vec<_> = GeneratorKind::ALL.iter().map(|k| k.name()).collect();
                CliError::Usage(format!("unknown generator `{kind}` (expected one of {})", known.join(", ")))
            })?;
            let defaults = GeneratorSpec::new(kind);
            let spec = GeneratorSpec {
                kind,
                p: p.unwrap_or(defaults.p),
                depth: depth.unwrap_or(defaults.depth),
                n: n.unwrap_or(defaults.n),
                seed: seed.unwrap_or(defaults.seed),
                components: components.unwrap_or(defaults.components),
                max_morphisms: max_morphisms.unwrap_or(defaults.max_morphisms),
            };
            let generated = generate(&spec).map_err(|e| match e {
                Error::InvalidParameter { .. } => CliError::Usage(e.to_string()),
                other => CliError::domain("gen", other),
            })?;
            Ok(Outcome::ok(match generated {
                Generated::Groupoid(g) => Document::Groupoid(GroupoidDocument::from_groupoid(&g)),
                Generated::Tower(t) => Document::Tower(TowerDocument::from_tower(&t)),
            }))
        }
        Command::Threads { depth, input } => {
            let t = match ctx.read(input)? {
                Document::Tower(t) => t.to_tower()?,
                other => return Err(wrong_kind("tower", &other)),
            };
            let lists = |tower: stone_groupoid::SetTower| -> Result<Vec<Vec<usize>>, CliError> {
                Ok(tower
                    .threads_at_depth(*depth)
                    .map_err(|e| CliError::domain("threads", e))?
                    .into_iter()
                    .map(|th| th.0)
                    .collect())
            };
            Ok(Outcome::ok(Document::Threads(ThreadsDocument {
                version: FORMAT_VERSION,
                depth: *depth,
                objects: lists(t.object_tower())?,
                components: lists(t.pi0_tower())?,
            })))
        }
    }
}

fn skeletonize(input: Input) -> Result<Outcome, CliError> {
    let mut trace = TraceDocument::new("skeletonize");
    match input {
        Input::Groupoid(g) => {
            let s = skeletal_replacement(&g);
            trace.push(
                "inclusion",
                None,
                Document::Functor(FunctorDocument::new(&s.skeleton, &g, &s.inclusion)),
            );
            Ok(Outcome::traced(
                Document::Groupoid(GroupoidDocument::from_groupoid(&s.skeleton)),
                trace,
            ))
        }
        Input::Tower(t) => {
            let s = skeletal_replacement_tower(&t).map_err(|e| CliError::domain("skeleton", e))?;
            for (n, level) in s.levels.iter().enumerate() {
                trace.push(
                    "inclusion",
                    Some(n),
                    Document::Functor(FunctorDocument::new(&level.skeleton, t.level(n), &level.inclusion)),
                );
            }
            Ok(Outcome::traced(Document::Tower(TowerDocument::from_tower(&s.tower)), trace))
        }
    }
}

fn run_pipeline(ctx: &mut Context<'_>, input: &str, neighborhood: Option<&str>) -> Result<Outcome, CliError> {
    let t = match groupoid_or_tower(ctx, input)? {
        Input::Groupoid(g) => GroupoidTower::single(g),
        Input::Tower(t) => t,
    };
    let u = match neighborhood {
        None => None,
        Some(path) => Some(ctx.subset(path, t.top().num_morphisms())?),
    };
    let out = pipeline(&t, u.as_ref(), ctx.bound).map_err(|e| CliError::domain("pipeline", e))?;
    let trace = pipeline_trace(&t, u.as_ref(), &out);
    Ok(Outcome::traced(
        Document::Presentation(PresentationDocument::from_presentation(&out.presentation)),
        trace,
    ))
}

fn pipeline_trace(
    t: &GroupoidTower,
    u: Option<&stone_groupoid::constructions::MorphismSet>,
    out: &PipelineOutput,
) -> TraceDocument {
    let mut trace = TraceDocument::new("pipeline");
    if let (Some(runs), Some(_)) = (&out.trace.van_dantzig, u) {
        for (n, (h, vd)) in runs.iter().enumerate() {
            trace.push(
                "vandantzig",
                Some(n),
                Document::Vandantzig(VanDantzigDocument {
                    version: FORMAT_VERSION,
                    universe: t.level(n).num_morphisms(),
                    neighborhood: vd.neighborhood.to_vec(),
                    subgroupoid: h.morphisms().to_vec(),
                    trace: VanDantzigSets::from(vd),
                }),
            );
        }
    }
    let skeleton = &out.trace.skeleton;
    trace.push("skeleton", None, Document::Tower(TowerDocument::from_tower(&skeleton.tower)));
    for (n, kernel) in out.trace.kernels.iter().enumerate() {
        trace.push("kernel", Some(n), Document::Subset(SubsetDocument::from_set(kernel.morphisms())));
    }
    for q in &out.trace.quotients {
        trace.push(
            "quotient",
            Some(q.level),
            Document::Functor(FunctorDocument::new(
                &q.quotient,
                skeleton.tower.level(q.level),
                &q.comparison,
            )),
        );
        let mut findings = vec![Finding::new("whitehead", q.whitehead)];
        findings.push(match q.oracle {
            Some(holds) => Finding::new("oracle", holds),
            None => Finding::new("oracle", true).with_detail("skipped: over the oracle bound"),
        });
        trace.push(
            "comparison",
            Some(q.level),
            Document::Report(ReportDocument::new("quotient comparison", findings)),
        );
    }
    trace.push(
        "reconstruct",
        None,
        Document::Report(reconstruction_report(&out.trace.reconstruction)),
    );
    trace.push("limit", None, Document::Report(limit_report(&out.trace.limit)));
    trace
}

fn reconstruction_report(r: &stone_groupoid::constructions::Reconstruction) -> ReportDocument {
    let finding = match &r.witness {
        None => Finding::new("isomorphism", true).with_detail(format!(
            "{} object families, {} morphism families",
            r.object_families, r.morphism_families
        )),
        Some(ReconstructionWitness::ObjectsIdentified(a, b)) => Finding::failed("objects-identified", vec![*a, *b]),
        Some(ReconstructionWitness::MorphismsIdentified(a, b)) => {
            Finding::failed("morphisms-identified", vec![*a, *b])
        }
        Some(ReconstructionWitness::ObjectFamilyMissed(v)) => Finding::failed("object-family-missed", v.clone()),
        Some(ReconstructionWitness::MorphismFamilyMissed(v)) => Finding::failed("morphism-family-missed", v.clone()),
    };
    ReportDocument::new("reconstruct", vec![finding])
}

fn limit_report(l: &LimitCommutation) -> ReportDocument {
    let mut findings = vec![Finding::new("component-threads", true).with_detail(format!(
        "{} threads at depth {}",
        l.component_threads.len(),
        l.depth
    ))];
    for w in &l.witnesses {
        findings.push(match w {
            LimitWitness::UnreachedComponent { level, component } => {
                Finding::failed("unreached-component", vec![*component]).at(*level)
            }
            LimitWitness::UnreachedElement { thread, level, element } => {
                Finding::failed("unreached-element", vec![*element])
                    .at(*level)
                    .with_detail(format!("component thread {thread:?}"))
            }
            LimitWitness::NotIsomorphic { thread } => Finding::failed("not-isomorphic", thread.clone()),
        });
    }
    ReportDocument::new("limit commutation", findings)
}

fn equivalence_report(f: &GroupoidFunctor<'_>, bound: usize) -> ReportDocument {
    let ff = internal_fully_faithful(f);
    let es = internal_essentially_surjective(f);
    let wh = whitehead_equivalence(f);
    let mut findings = vec![
        Finding::new("fully-faithful", ff),
        Finding::new("essentially-surjective", es),
        Finding::new("whitehead", wh),
    ];
    // the oracle asks whether the groupoids are equivalent at all, so it only
    // settles the question when it says no
    match equivalence_oracle_with_bound(f.source(), f.target(), bound) {
        Ok(true) => findings.push(Finding::new("oracle", true).with_detail("some equivalence exists")),
        Ok(false) => findings.push(Finding::new("oracle", false)),
        Err(e) => findings.push(Finding::new("oracle", true).with_detail(format!("skipped: {e}"))),
    }
    ReportDocument::new("check-equiv", findings)
}

/// The identity functor on a groupoid, as a document.
pub fn identity_functor(g: &FiniteGroupoid) -> FunctorDocument {
    FunctorDocument::new(g, g, &FunctorMaps::identity(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_bound_parses_or_is_a_usage_error() {
        assert_eq!(oracle_bound(None).unwrap(), DEFAULT_ORACLE_BOUND);
        assert_eq!(oracle_bound(Some(" 128 ")).unwrap(), 128);
        assert_eq!(oracle_bound(Some("-1")).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn help_goes_to_stdout_with_status_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with_bound(["stone-groupoid", "--help"], None, &mut &b""[..], &mut out, &mut err);
        assert_eq!(code, 0);
        assert!(String::from_utf8(out).unwrap().contains("check-equiv"));
        assert!(err.is_empty());
    }

    #[test]
    fn limit_report_lists_each_witness() {
        let l = LimitCommutation {
            depth: 1,
            component_threads: Vec::new(),
            element_threads: Vec::new(),
            witnesses: vec![LimitWitness::UnreachedComponent { level: 0, component: 3 }],
        };
        let r = limit_report(&l);
        assert!(!r.passed);
        assert_eq!(r.findings[1].witness, vec![3]);
        assert_eq!(r.findings[1].level, Some(0));
    }
}
