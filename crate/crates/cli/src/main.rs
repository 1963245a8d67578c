//! `hurwitz`: command-line access to braid orbits, component monoids,
//! rationality tests and lifting invariants.
//!
//! Every run prints one JSON report. Exit codes: 0 success, 1 input or
//! usage error, 2 a resource cap was hit.

mod examples;
mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_core::braid::{self, ComponentFilter};
use hurwitz_core::galois::{self, make_context, ActionResolution, ContextMode, RationalityContext};
use hurwitz_core::lifting::{self, MBigEstimate};
use hurwitz_core::monoid::{self, NiQuery};
use hurwitz_core::{Caps, ClassSet, Component, Permutation, PermutationGroup};
use serde_json::{json, Value};

use report::InputLog;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hurwitz_core::Error),
    #[error("{0}")]
    Input(String),
}

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Components of Hurwitz spaces as braid orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Group file (JSON: degree, generators).
    #[arg(long, global = true)]
    group: Option<PathBuf>,
    /// Component file (JSON: perm_degree, tuple); repeat for several.
    #[arg(long = "component", global = true)]
    components: Vec<PathBuf>,
    /// transpositions | nonidentity | all | cycle strings separated by ';'.
    #[arg(long, global = true)]
    classes: Option<String>,
    /// full | trivial | comma-separated residues.
    #[arg(long, global = true)]
    units: Option<String>,
    #[arg(long, global = true, default_value_t = Caps::default().max_orbit)]
    max_orbit: usize,
    #[arg(long, global = true, default_value_t = Caps::default().max_cosets)]
    max_cosets: usize,
    #[arg(long, global = true, default_value_t = Caps::default().max_elements)]
    max_elements: usize,
    /// Render the report as indented text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Include wall time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupAction {
    Info,
    Classes,
    Conjugate,
}

#[derive(Subcommand)]
enum Command {
    /// Order, transitivity and order statistics of a group; its classes; or
    /// a conjugacy test.
    Group {
        #[arg(value_enum, default_value = "info")]
        action: GroupAction,
        /// Group file (same as --group).
        #[arg(long)]
        file: Option<PathBuf>,
        /// First element for `conjugate`.
        #[arg(long)]
        a: Option<String>,
        /// Second element for `conjugate`.
        #[arg(long)]
        b: Option<String>,
    },
    /// Braid orbits of product-one tuples of a given length over the classes.
    Components {
        #[arg(long)]
        degree: usize,
        /// Keep only components generating the whole group.
        #[arg(long)]
        generating: bool,
    },
    /// Product of the given components.
    Concat,
    /// The set ni_H of the given components.
    Ni,
    /// The sharp ni set of the given components.
    NiSharp,
    /// Whether two components are permuting (or a family, for three or more).
    Permuting,
    /// Whether the sharp ni set is exactly the product.
    VerifySingleton,
    /// Extract blocks (g, .., g) of length ord(g) down to degree psi.
    Factor {
        /// Target degree; defaults to psi of the monodromy group.
        #[arg(long)]
        psi: Option<usize>,
    },
    /// Coarse and refined degree bounds for the reduction to small degree.
    Bounds,
    /// The component V built from ord(g) copies of each g in c.
    BuildV,
    /// Whether no proper subgroup meets every class of c.
    CompleteCheck,
    /// Whether c is closed under the unit powers.
    RationalSubset,
    /// Whether the multidiscriminant of a component is fixed by the units.
    RationalMultidisc,
    /// Action of a unit on an abelian component.
    AbelianAct {
        #[arg(long)]
        k: u64,
    },
    /// Whether an abelian component is fixed by every unit.
    AbelianDefined,
    /// Candidates for the image of a component under a unit.
    ResolveAct {
        #[arg(long)]
        k: u64,
    },
    /// Product over the orbit of an abelian component under the units.
    Norm,
    /// The finite cover S_c of the group.
    SchurCover,
    /// Lifting invariant of a component.
    Invariant,
    /// Action of a unit on the lifting invariant of a component.
    ActInvariant {
        #[arg(long)]
        k: u64,
    },
    /// Empirical threshold above which invariants separate components.
    EstimateMbig {
        #[arg(long)]
        degree: usize,
    },
    /// Reproduce a worked example: 5.5, 5.6, 2.13, 2.14 or 3.15.
    PaperExample { id: String },
}

struct Ctx<'a> {
    common: &'a Common,
    caps: Caps,
    log: InputLog,
}

impl Ctx<'_> {
    fn group_from(&mut self, path: Option<&PathBuf>) -> Result<PermutationGroup, CliError> {
        let path = path
            .or(self.common.group.as_ref())
            .ok_or_else(|| CliError::Input("a group file is required (--group)".into()))?;
        let bytes = io::read(path)?;
        self.log.record(&bytes);
        io::parse_group(&bytes, &path.display().to_string())
    }

    fn group(&mut self) -> Result<PermutationGroup, CliError> {
        self.group_from(None)
    }

    fn components(&mut self, min: usize, max: Option<usize>) -> Result<Vec<Component>, CliError> {
        let n = self.common.components.len();
        if n < min || max.is_some_and(|m| n > m) {
            let want = match max {
                Some(m) if m == min => format!("{min}"),
                Some(m) => format!("{min} to {m}"),
                None => format!("at least {min}"),
            };
            return Err(CliError::Input(format!(
                "expected {want} --component file(s), got {n}"
            )));
        }
        let mut out = Vec::with_capacity(n);
        for path in &self.common.components {
            let bytes = io::read(path)?;
            self.log.record(&bytes);
            out.push(io::parse_component(
                &bytes,
                &path.display().to_string(),
                &self.caps,
            )?);
        }
        Ok(out)
    }

    fn component(&mut self) -> Result<Component, CliError> {
        Ok(self.components(1, Some(1))?.remove(0))
    }

    /// `--group` when given, otherwise the monodromy group of `x`.
    fn group_or_monodromy(&mut self, x: &Component) -> Result<PermutationGroup, CliError> {
        if self.common.group.is_some() {
            let g = self.group()?;
            if !x.monodromy().is_subgroup_of(&g) {
                return Err(CliError::Input(
                    "the component's monodromy group is not contained in --group".into(),
                ));
            }
            Ok(g)
        } else {
            Ok(x.monodromy().clone())
        }
    }

    fn classes(&self, g: &PermutationGroup) -> Result<ClassSet, CliError> {
        let spec = self.common.classes.as_deref().unwrap_or("nonidentity");
        io::parse_classes(spec, g, &self.caps)
    }

    fn context(&self, modulus: u64) -> Result<RationalityContext, CliError> {
        let spec = self.common.units.as_deref().unwrap_or("full").trim();
        let mode = match spec {
            "full" => ContextMode::Full,
            "trivial" => ContextMode::Trivial,
            list => ContextMode::Explicit(
                list.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u64>()
                            .map_err(|_| CliError::Input(format!("bad unit `{s}`")))
                    })
                    .collect::<Result<_, _>>()?,
            ),
        };
        Ok(make_context(modulus, mode)?)
    }

    fn exponent(&self, g: &PermutationGroup) -> Result<u64, CliError> {
        Ok(g.order_statistics(self.caps.max_elements)?.exponent)
    }
}

fn context_json(ctx: &RationalityContext) -> Value {
    json!({ "modulus": ctx.modulus(), "units": ctx.units() })
}

fn run(cmd: &Command, cx: &mut Ctx) -> Result<Value, CliError> {
    let caps = cx.caps;
    match cmd {
        Command::Group { action, file, a, b } => {
            let g = cx.group_from(file.as_ref())?;
            match action {
                GroupAction::Info => {
                    let mut v = io::group_json(&g);
                    v["transitive"] = json!(g.is_transitive());
                    v["abelian"] = json!(g.is_abelian());
                    v["base"] = json!(g.base().iter().map(|p| p + 1).collect::<Vec<_>>());
                    v["generator_orders"] =
                        json!(g.generators().iter().map(|p| p.order()).collect::<Vec<_>>());
                    if g.order() <= caps.max_elements as u128 {
                        let stats = g.order_statistics(caps.max_elements)?;
                        v["exponent"] = json!(stats.exponent);
                        v["psi"] = json!(stats.psi);
                    }
                    Ok(v)
                }
                GroupAction::Classes => {
                    let all = ClassSet::all(std::sync::Arc::new(
                        g.conjugacy_classes(caps.max_elements)?,
                    ));
                    Ok(json!({ "order": g.order(), "classes": io::classes_json(&all) }))
                }
                GroupAction::Conjugate => {
                    let (Some(a), Some(b)) = (a, b) else {
                        return Err(CliError::Input("conjugate needs --a and --b".into()));
                    };
                    let pa = Permutation::parse_cycles(a, g.degree())?;
                    let pb = Permutation::parse_cycles(b, g.degree())?;
                    let conj = g.are_conjugate(&pa, &pb, caps.max_orbit)?;
                    Ok(json!({ "a": pa.to_string(), "b": pb.to_string(), "conjugate": conj }))
                }
            }
        }
        Command::Components { degree, generating } => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            let filter = ComponentFilter {
                generating: *generating,
            };
            let comps = braid::enumerate_components(&c, *degree, filter, &caps)?;
            Ok(json!({
                "group_order": g.order(),
                "classes": io::classes_json(&c),
                "degree": degree,
                "count": comps.len(),
                "components": io::components_json(&comps),
            }))
        }
        Command::Concat => {
            let xs = cx.components(1, None)?;
            let mut canon = braid::Canonicalizer::new(xs[0].perm_degree(), caps.max_orbit);
            let refs: Vec<&Component> = xs.iter().collect();
            let p = canon.product(&refs)?;
            Ok(json!({ "product": io::component_json(&p) }))
        }
        Command::Ni | Command::NiSharp => {
            let sharp = matches!(cmd, Command::NiSharp);
            let factors = cx.components(1, None)?;
            let q = if cx.common.group.is_some() {
                NiQuery {
                    group: cx.group()?,
                    factors,
                    sharp,
                }
            } else {
                NiQuery::generated(factors, sharp)?
            };
            let set = monoid::ni_set(&q, &caps)?;
            Ok(json!({
                "group_order": q.group.order(),
                "sharp": sharp,
                "count": set.len(),
                "components": io::components_json(&set),
            }))
        }
        Command::Permuting => {
            let xs = cx.components(2, None)?;
            if xs.len() == 2 {
                let test = hurwitz_core::perm::subgroup_product_test(
                    xs[0].monodromy(),
                    xs[1].monodromy(),
                    &caps,
                )?;
                Ok(json!({
                    "permuting": test.product_is_group,
                    "orders": [xs[0].monodromy().order(), xs[1].monodromy().order()],
                    "intersection_order": test.intersection_order,
                    "join_order": test.join.order(),
                }))
            } else {
                Ok(json!({ "permuting": monoid::is_permuting_family(&xs, &caps)? }))
            }
        }
        Command::VerifySingleton => {
            let factors = cx.components(1, None)?;
            let q = if cx.common.group.is_some() {
                NiQuery {
                    group: cx.group()?,
                    factors,
                    sharp: true,
                }
            } else {
                NiQuery::generated(factors, true)?
            };
            let r = monoid::verify_singleton(&q, &caps)?;
            Ok(json!({
                "holds": r.holds,
                "product": io::component_json(&r.product),
                "witness": io::components_json(&r.witness),
            }))
        }
        Command::Factor { psi } => {
            let x = cx.component()?;
            let psi = match psi {
                Some(p) => *p,
                None => x.monodromy().order_statistics(caps.max_elements)?.psi as usize,
            };
            let f = monoid::factor_small(&x, psi, &caps)?;
            Ok(json!({
                "psi": psi,
                "blocks": f.blocks.iter().map(|(g, n)| json!({"element": g.to_string(), "length": n})).collect::<Vec<_>>(),
                "rest": io::component_json(&f.rest),
            }))
        }
        Command::Bounds => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            let stats = g.order_statistics(caps.max_elements)?;
            let (coarse, refined) = monoid::reduction_bounds(&c, &caps)?;
            Ok(json!({
                "psi": stats.psi,
                "class_set_size": c.len(),
                "coarse": coarse,
                "refined": refined,
            }))
        }
        Command::BuildV => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            let v = monoid::build_v(&c, &caps)?;
            Ok(json!({ "classes": io::classes_json(&c), "v": io::component_json(&v) }))
        }
        Command::CompleteCheck => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            Ok(json!({
                "classes": io::classes_json(&c),
                "complete": monoid::is_complete_class_set(&c, &caps)?,
            }))
        }
        Command::RationalSubset => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            let ctx = cx.context(cx.exponent(&g)?)?;
            Ok(json!({
                "context": context_json(&ctx),
                "classes": io::classes_json(&c),
                "rational": galois::is_rational_subset(&c.elements(), &ctx),
            }))
        }
        Command::RationalMultidisc => {
            let x = cx.component()?;
            let g = cx.group_or_monodromy(&x)?;
            let c = cx.classes(&g)?;
            let ctx = cx.context(cx.exponent(&g)?)?;
            let mu = braid::multidiscriminant(x.canonical(), &c)?;
            Ok(json!({
                "context": context_json(&ctx),
                "multidiscriminant": io::multidiscriminant_json(&mu, &c),
                "rational": galois::is_rational_multidiscriminant(&x, &c, &ctx)?,
            }))
        }
        Command::AbelianAct { k } => {
            let x = cx.component()?;
            let y = galois::abelian_action(&x, *k, &caps)?;
            Ok(json!({ "k": k, "image": io::component_json(&y) }))
        }
        Command::AbelianDefined => {
            let x = cx.component()?;
            let g = cx.group_or_monodromy(&x)?;
            let ctx = cx.context(cx.exponent(&g)?)?;
            Ok(json!({
                "context": context_json(&ctx),
                "defined": galois::is_defined_over_abelian(&x, &ctx, &caps)?,
            }))
        }
        Command::ResolveAct { k } => {
            let x = cx.component()?;
            let g = cx.group_or_monodromy(&x)?;
            let c = cx.classes(&g)?;
            let cover = lifting::build_schur_cover(&c, &caps)?;
            Ok(match galois::resolve_action(&x, *k, &cover, &caps)? {
                ActionResolution::Determined(y) => {
                    json!({ "k": k, "determined": true, "candidates": [io::component_json(&y)] })
                }
                ActionResolution::Ambiguous(ys) => {
                    json!({ "k": k, "determined": false, "candidates": io::components_json(&ys) })
                }
            })
        }
        Command::Norm => {
            let x = cx.component()?;
            let g = cx.group_or_monodromy(&x)?;
            let ctx = cx.context(cx.exponent(&g)?)?;
            let n = galois::galois_norm_abelian(&x, &ctx, &caps)?;
            Ok(json!({
                "context": context_json(&ctx),
                "norm": io::component_json(&n),
                "defined": galois::is_defined_over_abelian(&n, &ctx, &caps)?,
            }))
        }
        Command::SchurCover => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            let cover = lifting::build_schur_cover(&c, &caps)?;
            let projections: Vec<Value> = c
                .elements()
                .iter()
                .map(|e| -> Result<Value, CliError> {
                    let s = cover.generator(e)?;
                    Ok(json!({ "generator": e.to_string(), "element": s.0, "projection": cover.project(s).to_string() }))
                })
                .collect::<Result<_, _>>()?;
            Ok(json!({
                "group_order": g.order(),
                "classes": io::classes_json(&c),
                "size": cover.size(),
                "kernel_order": cover.kernel_order(),
                "exponent": cover.exponent(),
                "coset_table_size": cover.coset_table().len(),
                "relators": cover.presentation().relators().len(),
                "generators": projections,
            }))
        }
        Command::Invariant => {
            let x = cx.component()?;
            let g = cx.group_or_monodromy(&x)?;
            let c = cx.classes(&g)?;
            let cover = lifting::build_schur_cover(&c, &caps)?;
            let v = lifting::lifting_invariant(x.canonical(), &cover)?;
            Ok(json!({
                "cover_size": cover.size(),
                "coset_table_size": cover.coset_table().len(),
                "invariant": io::invariant_json(&v, &cover),
                "coherent": lifting::is_fibered_coherent(&v, &cover),
            }))
        }
        Command::ActInvariant { k } => {
            let x = cx.component()?;
            let g = cx.group_or_monodromy(&x)?;
            let c = cx.classes(&g)?;
            let cover = lifting::build_schur_cover(&c, &caps)?;
            let v = lifting::lifting_invariant(x.canonical(), &cover)?;
            let w = lifting::galois_act_invariant(&v, *k, &cover)?;
            Ok(json!({
                "k": k,
                "cover_size": cover.size(),
                "coset_table_size": cover.coset_table().len(),
                "invariant": io::invariant_json(&v, &cover),
                "image": io::invariant_json(&w, &cover),
            }))
        }
        Command::EstimateMbig { degree } => {
            let g = cx.group()?;
            let c = cx.classes(&g)?;
            let cover = lifting::build_schur_cover(&c, &caps)?;
            let r = lifting::estimate_m_big(&cover, *degree, &caps)?;
            let estimate = match r.estimate {
                MBigEstimate::Estimate(m) => json!(m),
                MBigEstimate::NotStabilized => json!("not stabilized"),
            };
            Ok(json!({
                "degree_cap": degree,
                "estimate": estimate,
                "components_per_degree": r.components_per_degree,
                "collisions_at": r.collisions_at,
                "coset_table_size": cover.coset_table().len(),
            }))
        }
        Command::PaperExample { id } => examples::run(id, &caps),
    }
}

fn error_json(err: &CliError) -> Value {
    match err {
        CliError::Core(hurwitz_core::Error::CapExceeded { cap, limit }) => {
            json!({ "kind": "cap_exceeded", "cap": cap, "limit": limit, "message": err.to_string() })
        }
        CliError::Core(hurwitz_core::Error::CosetLimitExceeded(limit)) => {
            json!({ "kind": "cap_exceeded", "cap": "max_cosets", "limit": limit, "message": err.to_string() })
        }
        _ => json!({ "kind": "input", "message": err.to_string() }),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let args = &argv[1..];
    let caps = Caps {
        max_orbit: cli.common.max_orbit,
        max_cosets: cli.common.max_cosets,
        max_elements: cli.common.max_elements,
    };
    let mut cx = Ctx {
        common: &cli.common,
        caps,
        log: InputLog::new(args),
    };
    let start = Instant::now();
    let outcome = run(&cli.command, &mut cx);
    let wall = cli
        .common
        .timing
        .then(|| start.elapsed().as_secs_f64() * 1000.0);
    let code = match &outcome {
        Ok(_) => 0,
        Err(CliError::Core(e)) if e.is_cap() => 2,
        Err(_) => 1,
    };
    if let Err(e) = &outcome {
        eprintln!("error: {e}");
    }
    let report = report::build(
        args,
        cx.log.digest(),
        &caps,
        outcome.map_err(|e| error_json(&e)),
        wall,
    );
    if cli.common.human {
        print!("{}", report::human(&report));
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports are valid JSON")
        );
    }
    ExitCode::from(code)
}
