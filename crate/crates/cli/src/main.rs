//! Command-line front end for the incidence algebra / coalgebra toolkit.
//!
//! Exit codes: 0 on success, 1 on a semantic failure (the report names the
//! violated law or the counterexample), 2 on I/O or parse failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use incidence_core::json::{
    from_json_str, to_json_string, AutPartsDoc, DerPartsDoc, EndomapDoc, FunctionDoc, PosetDoc,
};
use incidence_core::{
    check_coalgebra_axioms, compose_coalgebra_automorphism, compose_coalgebra_derivation,
    decompose_coalgebra_automorphism, decompose_coalgebra_derivation, sample, CoalgebraEndomap,
    Error, FieldSpec, IncidenceFunction, Poset,
};

#[derive(Parser)]
#[command(name = "incidence", version, about = "Exact incidence algebra and coalgebra tools")]
struct Cli {
    /// Ground field: `q` for the rationals or `gf:<p>` for a prime field.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Seed for the `random` subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output path; results go to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate poset files and enumerate their automorphism groups.
    Poset {
        #[command(subcommand)]
        command: PosetCommand,
    },
    /// Check coalgebra axioms and classify linear maps.
    Coalgebra {
        #[command(subcommand)]
        command: CoalgebraCommand,
    },
    /// Coalgebra automorphisms: generate, factor, recompose.
    Aut {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Coalgebra derivations: generate, split, recompose.
    Der {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Write the Möbius function (the convolution inverse of zeta).
    Mobius { poset: PathBuf },
}

#[derive(Subcommand)]
enum PosetCommand {
    /// Validate the order axioms and report counts.
    Check { poset: PathBuf },
    /// Enumerate the automorphism group.
    Autgroup { poset: PathBuf },
}

#[derive(Subcommand)]
enum CoalgebraCommand {
    /// Check the coalgebra axioms; optionally classify a linear map.
    Check {
        poset: PathBuf,
        /// Linear-map file to classify as morphism / derivation.
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Generate a seeded random map plus a sidecar file of its parts.
    Random { poset: PathBuf },
    /// Factor a map file into canonical parts.
    Decompose { poset: PathBuf, map: PathBuf },
    /// Recompose a map from a parts file.
    Compose { poset: PathBuf, parts: PathBuf },
}

/// Failures split by exit code: semantic reports go to stdout with code 1,
/// I/O and parse problems go to stderr with code 2.
enum Failure {
    Semantic(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema(_)
            | Error::MalformedScalar(_)
            | Error::MalformedFieldSpec(_)
            | Error::ZeroDenominator
            | Error::NotPrime(_)
            | Error::ModulusTooLarge(_)
            | Error::UnresolvedPosetRef(_) => Failure::Parse(e.to_string()),
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(0),
        Err(Failure::Semantic(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let field = FieldSpec::parse(&cli.field)?;
    match &cli.command {
        Command::Poset { command } => match command {
            PosetCommand::Check { poset } => poset_check(poset),
            PosetCommand::Autgroup { poset } => poset_autgroup(poset),
        },
        Command::Coalgebra { command } => match command {
            CoalgebraCommand::Check { poset, map } => {
                coalgebra_check(poset, map.as_deref(), field)
            }
        },
        Command::Aut { command } => match command {
            MapCommand::Random { poset } => aut_random(poset, field, cli.seed, cli.out.as_deref()),
            MapCommand::Decompose { poset, map } => {
                aut_decompose(poset, map, field, cli.out.as_deref())
            }
            MapCommand::Compose { poset, parts } => {
                aut_compose(poset, parts, field, cli.out.as_deref())
            }
        },
        Command::Der { command } => match command {
            MapCommand::Random { poset } => der_random(poset, field, cli.seed, cli.out.as_deref()),
            MapCommand::Decompose { poset, map } => {
                der_decompose(poset, map, field, cli.out.as_deref())
            }
            MapCommand::Compose { poset, parts } => {
                der_compose(poset, parts, field, cli.out.as_deref())
            }
        },
        Command::Mobius { poset } => mobius(poset, field, cli.out.as_deref()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_poset(path: &Path) -> Result<Arc<Poset>, Failure> {
    let doc: PosetDoc = from_json_str(&read_file(path)?)?;
    Ok(doc.to_poset()?)
}

fn load_endomap(
    path: &Path,
    poset: &Arc<Poset>,
    field: FieldSpec,
) -> Result<CoalgebraEndomap, Failure> {
    let doc: EndomapDoc = from_json_str(&read_file(path)?)?;
    Ok(doc.to_endomap(poset, field)?)
}

/// Sidecar path for `random`: the output path with a `.parts.json`
/// extension.
fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("parts.json")
}

fn require_out<'a>(out: Option<&'a Path>, what: &str) -> Result<&'a Path, Failure> {
    out.ok_or_else(|| Failure::Parse(format!("{what} requires --out <path>")))
}

fn poset_check(path: &Path) -> Result<(), Failure> {
    let poset = load_poset(path)?;
    println!(
        "elements={} pairs={} intervals={}",
        poset.len(),
        poset.intervals().len(),
        poset.intervals().len()
    );
    Ok(())
}

fn poset_autgroup(path: &Path) -> Result<(), Failure> {
    let poset = load_poset(path)?;
    let auts = poset.automorphisms()?;
    println!("automorphisms={}", auts.len());
    for aut in &auts {
        let line: Vec<String> = (0..poset.len())
            .map(|x| format!("{}->{}", poset.name(x), poset.name(aut.apply(x))))
            .collect();
        println!("{}", line.join(" "));
    }
    Ok(())
}

fn coalgebra_check(
    poset_path: &Path,
    map_path: Option<&Path>,
    field: FieldSpec,
) -> Result<(), Failure> {
    let poset = load_poset(poset_path)?;
    let report = check_coalgebra_axioms(&poset, field);
    match report.violation {
        None => println!("coalgebra axioms: pass"),
        Some((interval, axiom)) => {
            return Err(Failure::Semantic(format!(
                "coalgebra axioms: fail ({} at {})",
                axiom.as_str(),
                poset.interval_label(interval)
            )))
        }
    }
    if let Some(map_path) = map_path {
        let map = load_endomap(map_path, &poset, field)?;
        let morphism = map.morphism_violation();
        let derivation = map.derivation_violation();
        let morphism_text = match &morphism {
            None => "yes".to_string(),
            Some(v) => format!("no ({})", v.law.as_str()),
        };
        let derivation_text = if derivation.is_none() { "yes" } else { "no" };
        println!("morphism: {morphism_text}, derivation: {derivation_text}");
        println!(
            "bijective: {}",
            if map.is_bijective() { "yes" } else { "no" }
        );
        if let Some(v) = morphism {
            println!(
                "first failing instance: {} law at {}",
                v.law.as_str(),
                poset.interval_label(v.interval)
            );
        }
        if let Some(v) = derivation {
            println!(
                "first failing instance: derivation law at {}",
                poset.interval_label(v.interval)
            );
        }
    }
    Ok(())
}

fn aut_random(
    poset_path: &Path,
    field: FieldSpec,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let out = require_out(out, "aut random")?;
    let poset = load_poset(poset_path)?;
    let mut rng = sample::rng(seed);
    let (map, parts) = sample::coalgebra_automorphism(&mut rng, &poset, field)?;
    write_output(Some(out), &to_json_string(&EndomapDoc::from_endomap(&map)))?;
    let parts_doc = AutPartsDoc::from_parts(&poset, &parts);
    write_output(Some(&sidecar_path(out)), &to_json_string(&parts_doc))
}

fn aut_decompose(
    poset_path: &Path,
    map_path: &Path,
    field: FieldSpec,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let poset = load_poset(poset_path)?;
    let map = load_endomap(map_path, &poset, field)?;
    let decomposition = decompose_coalgebra_automorphism(&map)?;
    let doc = AutPartsDoc::from_parts(&poset, &decomposition.witness);
    write_output(out, &to_json_string(&doc))
}

fn aut_compose(
    poset_path: &Path,
    parts_path: &Path,
    field: FieldSpec,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let poset = load_poset(poset_path)?;
    let doc: AutPartsDoc = from_json_str(&read_file(parts_path)?)?;
    let parts = doc.to_parts(&poset, field)?;
    let map = compose_coalgebra_automorphism(&poset, field, &parts)?;
    write_output(out, &to_json_string(&EndomapDoc::from_endomap(&map)))
}

fn der_random(
    poset_path: &Path,
    field: FieldSpec,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let out = require_out(out, "der random")?;
    let poset = load_poset(poset_path)?;
    let mut rng = sample::rng(seed);
    let (map, parts) = sample::coalgebra_derivation(&mut rng, &poset, field)?;
    write_output(Some(out), &to_json_string(&EndomapDoc::from_endomap(&map)))?;
    let parts_doc = DerPartsDoc::from_parts(&parts);
    write_output(Some(&sidecar_path(out)), &to_json_string(&parts_doc))
}

fn der_decompose(
    poset_path: &Path,
    map_path: &Path,
    field: FieldSpec,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let poset = load_poset(poset_path)?;
    let map = load_endomap(map_path, &poset, field)?;
    let decomposition = decompose_coalgebra_derivation(&map)?;
    let doc = DerPartsDoc::from_parts(&decomposition.witness);
    write_output(out, &to_json_string(&doc))
}

fn der_compose(
    poset_path: &Path,
    parts_path: &Path,
    field: FieldSpec,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let poset = load_poset(poset_path)?;
    let doc: DerPartsDoc = from_json_str(&read_file(parts_path)?)?;
    let parts = doc.to_parts(&poset, field)?;
    let map = compose_coalgebra_derivation(&poset, field, &parts)?;
    write_output(out, &to_json_string(&EndomapDoc::from_endomap(&map)))
}

fn mobius(poset_path: &Path, field: FieldSpec, out: Option<&Path>) -> Result<(), Failure> {
    let poset = load_poset(poset_path)?;
    let zeta = IncidenceFunction::zeta(poset.clone(), field);
    let mobius = zeta.inverse()?;
    let delta = IncidenceFunction::delta(poset.clone(), field);
    if zeta.convolve(&mobius)? != delta || mobius.convolve(&zeta)? != delta {
        return Err(Failure::Semantic(
            "zeta inverse failed the two-sided identity check".into(),
        ));
    }
    write_output(out, &to_json_string(&FunctionDoc::from_function(&mobius)))
}
