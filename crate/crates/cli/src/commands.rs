use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use closure_cohomology::axioms::run_axiom_suite;
use closure_cohomology::ingest::{parse_edge_list, parse_labeled_edge_list, parse_points_csv, LabelMap, PresheafDocument};
use closure_cohomology::presheaf::PresheafViolation;
use closure_cohomology::sheaf::Stalk;
use closure_cohomology::{
    build_lattice, canonical_cover, cech_cohomology_space, check_flabby, check_presheaf, check_sheaf, nerve, stalk,
    CohomologyReport, ConstantCoefficients, FiniteClosureSpace, Lattice, LatticeCoefficients, PresheafData,
    SheafVerdict,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{AxiomArgs, CoefficientArgs, CohomologyArgs, NerveArgs, OutputArgs, PresheafArgs, ScanArgs, SheafArgs, SpaceArgs};

/// Outcome of a subcommand that ran to completion.
pub enum Status {
    Ok,
    /// A check could not finish within its caps.
    Indeterminate,
    /// The property suite found violations.
    Violations,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit<T: Serialize>(value: &T, out: &OutputArgs) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    parse_points_csv(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_space(args: &SpaceArgs) -> Result<FiniteClosureSpace> {
    if let Some(path) = &args.input.graph {
        let text = read(path)?;
        let edges = match &args.labels {
            Some(lp) => {
                let labels = LabelMap::parse(&read(lp)?).with_context(|| format!("parsing {}", lp.display()))?;
                parse_labeled_edge_list(&text, &labels)
            }
            None => parse_edge_list(&text),
        }
        .with_context(|| format!("parsing {}", path.display()))?;
        return Ok(FiniteClosureSpace::from_graph(edges.n, &edges.edges)?);
    }
    let path = args.input.points.as_ref().expect("clap requires one input");
    let r = args.r.expect("clap requires --r with --points");
    Ok(FiniteClosureSpace::from_metric(&load_points(path)?, args.metric, r)?)
}

fn load_presheaf(space: &FiniteClosureSpace, args: &CoefficientArgs) -> Result<(Lattice, PresheafData)> {
    let lattice = build_lattice(space, args.lattice_cap)?;
    let presheaf = match &args.presheaf {
        Some(path) => {
            let doc = PresheafDocument::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            let p = doc.into_presheaf(&lattice).with_context(|| format!("loading {}", path.display()))?;
            let report = check_presheaf(&lattice, &p);
            if !report.ok {
                for v in &report.violations {
                    eprintln!("presheaf violation: {}", describe_violation(&lattice, v));
                }
                bail!("{} is not a presheaf on the lattice", path.display());
            }
            p
        }
        None => PresheafData::constant(&lattice, &args.group),
    };
    Ok((lattice, presheaf))
}

fn describe_violation(lattice: &Lattice, v: &PresheafViolation) -> String {
    let s = |id: usize| lattice.get(id).to_string();
    match v {
        PresheafViolation::ValueCount { expected, found } => format!("{found} values for {expected} lattice elements"),
        PresheafViolation::NotInclusion { from, to } => format!("restriction {} -> {} is not along an inclusion", s(*from), s(*to)),
        PresheafViolation::Malformed { from, to, message } => format!("restriction {} -> {}: {message}", s(*from), s(*to)),
        PresheafViolation::NotWellDefined { from, to } => format!("restriction {} -> {} does not respect the relations", s(*from), s(*to)),
        PresheafViolation::NotIdentity { element } => format!("restriction on {} is not the identity", s(*element)),
        PresheafViolation::NotFunctorial { u, v, w } => format!("restrictions {} -> {} -> {} do not compose", s(*u), s(*v), s(*w)),
    }
}

pub fn cohomology(args: &CohomologyArgs) -> Result<Status> {
    let space = load_space(&args.space)?;
    let report = match args.coefficients.presheaf {
        Some(_) => {
            let (lattice, presheaf) = load_presheaf(&space, &args.coefficients)?;
            cech_cohomology_space(&space, &LatticeCoefficients { lattice: &lattice, presheaf: &presheaf }, args.ring, args.q_max)?
        }
        None => cech_cohomology_space(&space, &ConstantCoefficients(args.coefficients.group.clone()), args.ring, args.q_max)?,
    };
    emit(&report, &args.output)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ScanEntry {
    r: f64,
    #[serde(flatten)]
    report: CohomologyReport,
}

pub fn scan(args: &ScanArgs) -> Result<Status> {
    if !(args.r_min.is_finite() && args.r_max.is_finite()) || args.r_min < 0.0 || args.r_min > args.r_max {
        bail!("need 0 <= r-min <= r-max, got {} and {}", args.r_min, args.r_max);
    }
    let points = load_points(&args.points)?;
    let last = args.steps - 1;
    let radii: Vec<f64> = (0..args.steps)
        .map(|i| if i == last { args.r_max } else { args.r_min + (args.r_max - args.r_min) * i as f64 / last as f64 })
        .collect();
    let coeffs = ConstantCoefficients(args.group.clone());
    let entries = radii
        .par_iter()
        .map(|&r| {
            let space = FiniteClosureSpace::from_metric(&points, args.metric, r)?;
            let report = cech_cohomology_space(&space, &coeffs, args.ring, args.q_max)?;
            Ok(ScanEntry { r, report })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(&entries, &args.output)?;
    Ok(Status::Ok)
}

pub fn nerve_cmd(args: &NerveArgs) -> Result<Status> {
    let space = load_space(&args.space)?;
    let nv = nerve(&canonical_cover(&space), args.q_max);
    if let Some(path) = &args.dot {
        fs::write(path, nv.to_dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&nv, &args.output)?;
    Ok(Status::Ok)
}

pub fn check_sheaf_cmd(args: &SheafArgs) -> Result<Status> {
    let space = load_space(&args.presheaf.space)?;
    let (lattice, presheaf) = load_presheaf(&space, &args.presheaf.coefficients)?;
    let report = check_sheaf(&space, &lattice, &presheaf, args.cover_cap)?;
    emit(&report, &args.presheaf.output)?;
    if report.verdict == SheafVerdict::Indeterminate {
        eprintln!("cover cap {} reached on {} lattice element(s)", args.cover_cap, report.unchecked.len());
        return Ok(Status::Indeterminate);
    }
    Ok(Status::Ok)
}

pub fn check_flabby_cmd(args: &PresheafArgs) -> Result<Status> {
    let space = load_space(&args.space)?;
    let (lattice, presheaf) = load_presheaf(&space, &args.coefficients)?;
    emit(&check_flabby(&lattice, &presheaf)?, &args.output)?;
    Ok(Status::Ok)
}

pub fn stalks_cmd(args: &PresheafArgs) -> Result<Status> {
    let space = load_space(&args.space)?;
    let (lattice, presheaf) = load_presheaf(&space, &args.coefficients)?;
    let stalks = (0..space.n()).map(|x| stalk(&space, &lattice, &presheaf, x)).collect::<closure_cohomology::Result<Vec<Stalk>>>()?;
    emit(&stalks, &args.output)?;
    Ok(Status::Ok)
}

pub fn axioms_cmd(args: &AxiomArgs) -> Result<Status> {
    let report = run_axiom_suite(args.seed, args.spaces, args.max_n);
    emit(&report, &args.output)?;
    if report.passed() {
        Ok(Status::Ok)
    } else {
        eprintln!("{} violation(s)", report.violations.len());
        Ok(Status::Violations)
    }
}
