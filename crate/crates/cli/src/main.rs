use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use torsmut::algebra::AlgebraJson;
use torsmut::indec::{enumerate_indecomposables, IndList};
use torsmut::lattice::{
    check_mutation, cogenerated_pair, enumerate_torsion_classes, kronecker_preprojective, mutation_interval_top,
    right_mutations_of, verify_theorem_c, verify_triples, TorsLattice,
};
use torsmut::silting::{mutate_silting, silting_from_torsion_class, ComplexJson, Direction, SiltingObject};
use torsmut::torsion::{Ambient, IndSet};
use torsmut::{AlgebraFamily, Field, QuiverAlgebra};

#[derive(Parser, Debug)]
#[command(name = "torsmut", version, about = "Torsion classes, brick labels and two-term silting mutation")]
struct Cli {
    /// Built-in algebra: a<n>, point, kronecker, nakayama<n>-<l>.
    #[arg(long, global = true, conflicts_with = "algebra")]
    family: Option<String>,
    /// Algebra definition JSON file.
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Field modulus (prime).
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Total-dimension bound for the indecomposable enumeration
    /// [default: 8, or 7 for kronecker-demo].
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the algebra and report dimensions.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Indecomposable modules.
    Ind {
        #[command(subcommand)]
        cmd: IndCmd,
    },
    /// The lattice of torsion classes.
    Tors {
        #[command(subcommand)]
        cmd: TorsCmd,
    },
    /// Right mutations and the maximal mutation above a torsion class.
    Mutations {
        #[arg(long)]
        from: usize,
    },
    /// Two-term silting objects.
    Silting {
        #[command(subcommand)]
        cmd: SiltingCmd,
    },
    /// Exhaustive verification reports.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// The Kronecker sequence of irreducible mutations that is not a mutation.
    KroneckerDemo {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    Check,
}

#[derive(Subcommand, Debug)]
enum IndCmd {
    List,
}

#[derive(Subcommand, Debug)]
enum TorsCmd {
    /// Summary, or DOT / JSON with `--dot` / `--json` (stdout when no path).
    Lattice(LatticeArgs),
    /// Brick label of every cover.
    Labels,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    dot: Option<String>,
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
}

#[derive(Subcommand, Debug)]
enum SiltingCmd {
    /// Silting object of every torsion class, as JSON.
    List,
    /// Irreducible mutation at a summand.
    Mutate {
        /// Torsion class id of the starting object; defaults to the top class.
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        at: usize,
        #[arg(long, value_enum)]
        dir: Dir,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Dir {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    #[command(name = "theorem-c")]
    TheoremC,
    Triples,
}

/// Normal completion, or a completed run whose verification failed.
enum Status {
    Ok,
    Failed,
}

fn load_algebra(cli: &Cli) -> anyhow::Result<QuiverAlgebra> {
    match (&cli.family, &cli.algebra) {
        (Some(f), None) => {
            let family: AlgebraFamily = f.parse()?;
            let field = Field::new(cli.p.unwrap_or(2))?;
            Ok(QuiverAlgebra::builtin(family, field))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut json: AlgebraJson =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if let Some(p) = cli.p {
                if p != json.p {
                    bail!("--p {p} disagrees with p = {} in {}", json.p, path.display());
                }
                json.p = p;
            }
            Ok(QuiverAlgebra::from_json(&json)?)
        }
        _ => bail!("give exactly one of --family or --algebra"),
    }
}

fn dims_string(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap()).collect()
}

fn emit(target: &str, content: &str, out: &mut String) -> anyhow::Result<()> {
    if target == "-" {
        out.push_str(content);
    } else {
        std::fs::write(Path::new(target), content).with_context(|| format!("writing {target}"))?;
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

#[derive(Serialize)]
struct IndEntry {
    id: usize,
    dims: Vec<usize>,
    module: torsmut::rep::ModuleJson,
}

#[derive(Serialize)]
struct SiltingEntry {
    class: usize,
    torsion_class: IndSet,
    summands: Vec<ComplexJson>,
}

fn silting_entry(alg: &QuiverAlgebra, class: usize, t: &IndSet, s: &SiltingObject) -> SiltingEntry {
    SiltingEntry {
        class,
        torsion_class: t.clone(),
        summands: s.summands().iter().map(|x| alg.complex_to_json(x)).collect(),
    }
}

fn class_id(lat: &TorsLattice, id: usize) -> anyhow::Result<&IndSet> {
    lat.classes().get(id).ok_or_else(|| anyhow!("no torsion class with id {id} (there are {})", lat.len()))
}

fn run(cli: &Cli, out: &mut String) -> anyhow::Result<Status> {
    let alg = load_algebra(cli)?;
    if let Command::Algebra { cmd: AlgebraCmd::Check } = cli.command {
        let names = alg.quiver().vertices();
        writeln!(
            out,
            "algebra ok: p = {}, {} vertices, {} arrows, {} relations, dimension {}",
            alg.field().p(),
            alg.num_vertices(),
            alg.arrows().len(),
            alg.relations().len(),
            alg.dim()
        )?;
        for (v, name) in names.iter().enumerate() {
            writeln!(out, "P({name}) {}", dims_string(alg.projective(v).dims()))?;
        }
        return Ok(Status::Ok);
    }

    let bound = match cli.command {
        Command::KroneckerDemo { .. } => cli.bound.unwrap_or(7),
        _ => cli.bound.unwrap_or(8),
    };
    let ind: IndList = enumerate_indecomposables(&alg, bound)?;
    let amb = Ambient::new(&alg, &ind);

    match &cli.command {
        Command::Algebra { .. } => unreachable!("handled above"),
        Command::Ind { cmd: IndCmd::List } => {
            if cli.format == Format::Json {
                let entries: Vec<IndEntry> = ind
                    .items()
                    .iter()
                    .enumerate()
                    .map(|(id, x)| IndEntry { id, dims: x.dims().to_vec(), module: alg.rep_to_json(x) })
                    .collect();
                out.push_str(&to_json(&entries)?);
            } else {
                for (id, x) in ind.items().iter().enumerate() {
                    let brick = if amb.is_brick(id)? { "brick" } else { "" };
                    writeln!(out, "{id}\t{}\t{brick}", dims_string(x.dims()))?;
                }
                let status = if ind.complete() { "complete" } else { "incomplete" };
                writeln!(out, "{} indecomposables up to total dimension {bound} ({status})", ind.len())?;
            }
        }
        Command::Tors { cmd } => {
            let lat = enumerate_torsion_classes(&amb)?;
            match cmd {
                TorsCmd::Lattice(args) => {
                    if let Some(t) = &args.dot {
                        emit(t, &lat.to_dot(&amb), out)?;
                    }
                    if let Some(t) = &args.json {
                        emit(t, &to_json(&lat.to_json(&amb))?, out)?;
                    }
                    if args.dot.is_none() && args.json.is_none() {
                        for (i, c) in lat.classes().iter().enumerate() {
                            writeln!(out, "{i}\t{c}")?;
                        }
                        writeln!(out, "{} torsion classes, {} covers", lat.len(), lat.covers().len())?;
                    }
                }
                TorsCmd::Labels => {
                    if cli.format == Format::Json {
                        out.push_str(&to_json(&lat.covers())?);
                    } else {
                        for c in lat.covers() {
                            writeln!(
                                out,
                                "{} {} -> {} {}: brick {} {}",
                                c.lower,
                                lat.classes()[c.lower],
                                c.upper,
                                lat.classes()[c.upper],
                                c.label,
                                dims_string(amb.item(c.label).dims())
                            )?;
                        }
                    }
                }
            }
        }
        Command::Mutations { from } => {
            let lat = enumerate_torsion_classes(&amb)?;
            let t = class_id(&lat, *from)?;
            let rm = right_mutations_of(&amb, &lat, *from)?;
            let top = mutation_interval_top(&amb, &lat, *from)?;
            if cli.format == Format::Json {
                #[derive(Serialize)]
                struct Report<'a> {
                    from: usize,
                    right_mutations: &'a torsmut::lattice::RightMutations,
                    interval_top: &'a torsmut::lattice::IntervalEnds,
                }
                out.push_str(&to_json(&Report { from: *from, right_mutations: &rm, interval_top: &top })?);
            } else {
                let m = amb.almost_torsion_objects(&amb.torsion_pair(t))?;
                writeln!(out, "class {from} {t}: almost torsion objects {m}")?;
                for (sub, j) in &rm.entries {
                    writeln!(out, "  {sub} -> class {j} {}", lat.classes()[*j])?;
                }
                let yn = |b: bool| if b { "yes" } else { "no" };
                writeln!(out, "all mutations: {}, injective: {}", yn(rm.all_mutations), yn(rm.injective))?;
                let tops: Vec<String> = top.ends.iter().map(usize::to_string).collect();
                writeln!(out, "maximal mutation top: {} (unique: {})", tops.join(", "), yn(top.unique))?;
            }
            if !(rm.all_mutations && rm.injective && top.unique) {
                return Ok(Status::Failed);
            }
        }
        Command::Silting { cmd } => {
            let lat = enumerate_torsion_classes(&amb)?;
            match cmd {
                SiltingCmd::List => {
                    let mut entries = Vec::new();
                    for (i, c) in lat.classes().iter().enumerate() {
                        entries.push(silting_entry(&alg, i, c, &silting_from_torsion_class(&amb, c)?));
                    }
                    out.push_str(&to_json(&entries)?);
                }
                SiltingCmd::Mutate { from, at, dir } => {
                    let from = from.unwrap_or(lat.len() - 1);
                    let sigma = silting_from_torsion_class(&amb, class_id(&lat, from)?)?;
                    let dir = match dir {
                        Dir::Left => Direction::Left,
                        Dir::Right => Direction::Right,
                    };
                    let result = mutate_silting(&amb, &lat, &sigma, *at, dir)?;
                    let t = torsmut::silting::torsion_class_from_silting(&amb, &result)?;
                    let to = lat.position(&t).expect("mutation lands in the lattice");
                    out.push_str(&to_json(&silting_entry(&alg, to, &t, &result))?);
                }
            }
        }
        Command::Verify { cmd } => {
            let lat = enumerate_torsion_classes(&amb)?;
            match cmd {
                VerifyCmd::TheoremC => {
                    let r = verify_theorem_c(&amb, &lat)?;
                    if cli.format == Format::Json {
                        out.push_str(&to_json(&r)?);
                    } else {
                        writeln!(out, "{r}")?;
                        for v in &r.violations {
                            writeln!(out, "  violation: {v:?}")?;
                        }
                    }
                    if !r.violations.is_empty() {
                        return Ok(Status::Failed);
                    }
                }
                VerifyCmd::Triples => {
                    let r = verify_triples(&amb, &lat)?;
                    if cli.format == Format::Json {
                        out.push_str(&to_json(&r)?);
                    } else {
                        writeln!(
                            out,
                            "{} nested pairs, {} round-trip failures, {} invariant failures",
                            r.nested,
                            r.round_trip_failures.len(),
                            r.invariant_failures.len()
                        )?;
                    }
                    if !(r.round_trip_failures.is_empty() && r.invariant_failures.is_empty()) {
                        return Ok(Status::Failed);
                    }
                }
            }
        }
        Command::KroneckerDemo { n } => {
            if alg.num_vertices() != 2 || alg.arrows().len() != 2 {
                bail!("kronecker-demo needs the Kronecker algebra");
            }
            let n = *n;
            let p = |k: usize| kronecker_preprojective(&amb, k).map_err(|_| anyhow!("P^({k}) is beyond the bound {bound}"));
            let (pn, pn1, pn2) = (p(n)?, p(n + 1)?, p(n + 2)?);
            let status = if ind.complete() { "complete" } else { "incomplete" };
            writeln!(out, "Kronecker slice: bound {bound}, {} indecomposables ({status})", ind.len())?;
            let (t0, t1, t2) = (cogenerated_pair(&amb, pn), cogenerated_pair(&amb, pn1), cogenerated_pair(&amb, pn2));
            let (a, b, c) = (subscript(n), subscript(n + 1), subscript(n + 2));
            let step = check_mutation(&amb, &t1, &t0)?;
            let yn = |x: bool| if x { "yes" } else { "no" };
            writeln!(
                out,
                "t{b}→t{a}: wide subcategory {} = {{P^({})}}: {}",
                step.s_set,
                n + 1,
                yn(step.semibrick == [pn1].into())
            )?;
            writeln!(out, "irreducible: {}", yn(step.is_irreducible))?;
            let skip = check_mutation(&amb, &t2, &t0)?;
            writeln!(out, "pair-skip t{c}→t{a} s-set: {}", skip.s_set)?;
            writeln!(out, "pair-skip t{c}→t{a} wide: {}", yn(skip.is_mutation))?;
            if !step.is_irreducible || step.semibrick != [pn1].into() || skip.is_mutation {
                return Ok(Status::Failed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("TORSMUT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // A pool may already exist; the hint is then ignored.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut out = String::new();
    let status = run(&cli, &mut out);
    print!("{out}");
    match status {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
