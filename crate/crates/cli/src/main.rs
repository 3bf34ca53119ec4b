//! Command-line front end: load a monoid spec, dispatch a computation, and
//! emit a deterministic JSON or table report.
//!
//! Exit codes: 0 success; 1 usage or data error; 2 a `check` or `fuzz`
//! command found a violation.

mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use idealext::backslash::BsInvariantSummary;
use idealext::harness::{fuzz, CheckKind, FuzzConfig};
use idealext::invariants::{
    self, betti_elements, betti_in_box, catenary_elem, catenary_rclass_formula, omega_elem,
    omega_monoid,
};
use idealext::monoid::{interval_closure_check, pairwise_sums, GapFiniteness};
use idealext::{
    parse_monoid_spec, rational_string, AtomBasis, IdealExtension, LoadedMonoid, PiProfile,
    Point, PointBox, Reported,
};
use report::Report;
use serde_json::json;
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "idealext", version, about = "Factorization invariants of ideal extensions of N^d and backslash monoids", max_term_width = 100)]
struct Cli {
    /// Path to a monoid spec file (JSON).
    #[arg(long, global = true)]
    monoid: Option<String>,

    /// Emit the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Emit the report as an aligned table.
    #[arg(long, global = true)]
    table: bool,

    /// Size of the worker pool for parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ElemArg {
    /// Element as comma-separated coordinates, e.g. 1,5.
    #[arg(long, value_parser = parse_point)]
    elem: Point,
}

#[derive(Args)]
struct OptionalBox {
    /// Upper corner of the scan box ⟦0, v⟧, e.g. 161,28.
    #[arg(long = "box", value_parser = parse_point)]
    boxed: Option<Point>,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of the loaded monoid.
    Info,
    /// Membership test for an element.
    Member(ElemArg),
    /// The gap set and per-axis thresholds.
    Gaps,
    /// The atom set (full, or restricted to a box).
    Atoms(OptionalBox),
    /// The minimal nonzero elements.
    Minimals,
    /// Unit-axis split and core of an ideal extension.
    Core,
    /// All factorizations of an element.
    Factorize(ElemArg),
    /// The set of factorization lengths of an element.
    Lengths(ElemArg),
    /// Delta set of an element, or of the monoid when no element is given.
    Delta {
        #[arg(long, value_parser = parse_point)]
        elem: Option<Point>,
        #[arg(long = "box", value_parser = parse_point)]
        boxed: Option<Point>,
    },
    /// Minimum factorization length of an element.
    Ell(ElemArg),
    /// Elasticity of an element, or of a backslash monoid.
    Elasticity {
        #[arg(long, value_parser = parse_point)]
        elem: Option<Point>,
    },
    /// Betti elements (complete where justified, else within a box).
    Betti(OptionalBox),
    /// Catenary degree of an element or of the monoid.
    Catenary {
        #[arg(long, value_parser = parse_point)]
        elem: Option<Point>,
        #[arg(long = "box", value_parser = parse_point)]
        boxed: Option<Point>,
    },
    /// Omega-primality of an element or of the monoid.
    Omega {
        #[arg(long, value_parser = parse_point)]
        elem: Option<Point>,
        /// Cap on the cover search length.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run a named check; exits 2 when a violation is found.
    Check {
        /// ga | 2a-intervals | length-monotone | lengths-intervals
        which: String,
        #[arg(long = "box", value_parser = parse_point)]
        boxed: Option<Point>,
    },
    /// Column profiles of a two-dimensional ideal extension.
    PiProfile {
        /// Height axis (1 or 2).
        #[arg(long, default_value_t = 2)]
        axis: usize,
        /// Largest base value to profile; defaults to twice the largest
        /// base coordinate of the minimals plus one.
        #[arg(long)]
        vmax: Option<u64>,
    },
    /// Seeded randomized battery over ideal extensions; exits 2 when a
    /// violation is found.
    Fuzz {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        dim: usize,
        /// Upper end of the dimension range (defaults to --dim).
        #[arg(long)]
        dim_max: Option<usize>,
        #[arg(long)]
        max_coord: u64,
        #[arg(long)]
        seed: u64,
        /// Comma-separated check names (default: all).
        #[arg(long)]
        checks: Option<String>,
        /// Per-trial time budget in seconds.
        #[arg(long, default_value_t = 10)]
        budget_secs: u64,
        /// Directory for counterexample spec files.
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_point(text: &str) -> std::result::Result<Point, String> {
    let coords: std::result::Result<Vec<u64>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<u64>())
        .collect();
    match coords {
        Ok(coords) if !coords.is_empty() => Ok(Point::new(coords)),
        _ => Err(format!(
            "expected comma-separated non-negative integers, got {text:?}"
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: worker pool already initialized");
        }
    }
    let as_table = cli.table;
    let started = Instant::now();
    match run(cli) {
        Ok((report, violation)) => {
            report.emit(as_table);
            eprintln!("# wall time: {:?}", started.elapsed());
            if violation {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn load(cli: &Cli) -> Result<LoadedMonoid> {
    let path = cli
        .monoid
        .as_ref()
        .ok_or_else(|| anyhow!("this command needs --monoid <path>"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let loaded = parse_monoid_spec(&text)?;
    if let LoadedMonoid::Ideal { dropped, .. } = &loaded {
        for d in dropped {
            eprintln!("warning: generator {d} is dominated by another and was dropped");
        }
    }
    Ok(loaded)
}

/// Run the command; the boolean marks a check/fuzz violation (exit 2).
fn run(cli: Cli) -> Result<(Report, bool)> {
    match &cli.command {
        Command::Info => command_info(&cli),
        Command::Member(arg) => command_member(&cli, arg),
        Command::Gaps => command_gaps(&cli),
        Command::Atoms(arg) => command_atoms(&cli, arg),
        Command::Minimals => command_minimals(&cli),
        Command::Core => command_core(&cli),
        Command::Factorize(arg) => command_factorize(&cli, arg),
        Command::Lengths(arg) => command_lengths(&cli, arg),
        Command::Delta { elem, boxed } => command_delta(&cli, elem.as_ref(), boxed.as_ref()),
        Command::Ell(arg) => command_ell(&cli, arg),
        Command::Elasticity { elem } => command_elasticity(&cli, elem.as_ref()),
        Command::Betti(arg) => command_betti(&cli, arg),
        Command::Catenary { elem, boxed } => command_catenary(&cli, elem.as_ref(), boxed.as_ref()),
        Command::Omega { elem, cap } => command_omega(&cli, elem.as_ref(), *cap),
        Command::Check { which, boxed } => command_check(&cli, which, boxed.as_ref()),
        Command::PiProfile { axis, vmax } => command_pi_profile(&cli, *axis, *vmax),
        Command::Fuzz {
            trials,
            dim,
            dim_max,
            max_coord,
            seed,
            checks,
            budget_secs,
            out,
        } => command_fuzz(
            *trials,
            *dim,
            *dim_max,
            *max_coord,
            *seed,
            checks.as_deref(),
            *budget_secs,
            out.as_deref(),
        ),
    }
}

fn monoid_summary(loaded: &LoadedMonoid) -> serde_json::Value {
    match loaded {
        LoadedMonoid::Ideal { monoid, .. } => json!({
            "kind": "ideal_extension",
            "dim": monoid.dim(),
            "minimals": report::points_json(monoid.minimals()),
        }),
        LoadedMonoid::Backslash(b) => json!({
            "kind": "backslash",
            "dim": b.dim(),
            "J": b.j_axes().iter().map(|j| j + 1).collect::<Vec<_>>(),
            "T": {"gaps": b.semigroup().gaps()},
        }),
        LoadedMonoid::Atoms(a) => json!({
            "kind": "atoms",
            "dim": a.basis().dim(),
            "atom_count": a.basis().len(),
        }),
    }
}

fn expect_dim(loaded: &LoadedMonoid, p: &Point) -> Result<()> {
    if p.dim() != loaded.dim() {
        bail!(
            "element has dimension {}, monoid has dimension {}",
            p.dim(),
            loaded.dim()
        );
    }
    Ok(())
}

fn command_info(cli: &Cli) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let mut result = monoid_summary(&loaded);
    match &loaded {
        LoadedMonoid::Ideal { monoid, .. } => {
            let gaps = monoid.gaps();
            let extra = json!({
                "gap_finiteness": gaps.finiteness,
                "axis_thresholds": gaps.axis_thresholds,
                "gap_count": if gaps.gaps.is_empty() && !matches!(gaps.finiteness, GapFiniteness::Finite) {
                    json!("infinite")
                } else {
                    json!(gaps.gaps.len())
                },
                "atom_count": monoid.atoms().map(|a| json!(a.len())).unwrap_or(json!("infinite")),
                "extreme_rays": report::points_json(&monoid.extreme_rays()),
            });
            merge(&mut result, extra);
        }
        LoadedMonoid::Backslash(b) => {
            let summary = b.invariant_summary(default_scan_bound(b));
            merge(&mut result, summary_json(&summary));
        }
        LoadedMonoid::Atoms(a) => {
            let extra = json!({
                "atoms": report::points_json(a.basis().atoms()),
            });
            merge(&mut result, extra);
        }
    }
    Ok((
        Report::new("info", monoid_summary(&loaded), result),
        false,
    ))
}

fn merge(base: &mut serde_json::Value, extra: serde_json::Value) {
    if let (Some(base_map), serde_json::Value::Object(extra_map)) = (base.as_object_mut(), extra)
    {
        base_map.extend(extra_map);
    }
}

fn default_scan_bound(b: &idealext::BackslashMonoid) -> u64 {
    let atoms = b.semigroup().atoms();
    match (atoms.first(), atoms.last()) {
        (Some(&min), Some(&max)) => min * max + max,
        _ => 64,
    }
}

fn summary_json(summary: &BsInvariantSummary) -> serde_json::Value {
    json!({
        "gap_absorbing": summary.gap_absorbing,
        "elasticity": reported_json(&summary.elasticity, |r| json!(rational_string(*r))),
        "length_density": reported_json(&summary.length_density, |r| json!(rational_string(*r))),
        "length_density_note": summary.length_density_note,
        "catenary": reported_json(&summary.catenary, |c| json!(c)),
        "omega": reported_json(&summary.omega, |w| json!(w)),
    })
}

fn reported_json<T>(
    value: &Reported<T>,
    render: impl Fn(&T) -> serde_json::Value,
) -> serde_json::Value {
    match value.value() {
        Some(v) => json!({"value": render(v), "provenance": value.provenance()}),
        None => json!({"value": null, "provenance": "unknown"}),
    }
}

fn command_member(cli: &Cli, arg: &ElemArg) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    expect_dim(&loaded, &arg.elem)?;
    let result = loaded.as_monoid().contains(&arg.elem);
    Ok((
        Report::new(
            "member",
            monoid_summary(&loaded),
            json!({"elem": arg.elem, "member": result}),
        ),
        false,
    ))
}

fn command_gaps(cli: &Cli) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let report = match &loaded {
        LoadedMonoid::Ideal { monoid, .. } => monoid.gaps(),
        LoadedMonoid::Backslash(b) => b.gaps(),
        LoadedMonoid::Atoms(_) => {
            bail!("gap sets of atom-basis monoids are not supported; the complement is almost always infinite")
        }
    };
    Ok((
        Report::new(
            "gaps",
            monoid_summary(&loaded),
            json!({
                "finiteness": report.finiteness,
                "axis_thresholds": report.axis_thresholds,
                "gaps": report::points_json(&report.gaps),
                "count": report.gaps.len(),
            }),
        ),
        false,
    ))
}

fn command_atoms(cli: &Cli, arg: &OptionalBox) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let (atoms, scope) = match (&loaded, &arg.boxed) {
        (_, Some(hi)) => {
            expect_dim(&loaded, hi)?;
            let boxed = PointBox::from_origin(hi.clone());
            (loaded.as_monoid().atoms_in_box(&boxed), json!(format!("box [0,{hi}]")))
        }
        (LoadedMonoid::Ideal { monoid, .. }, None) => (
            monoid
                .atoms()
                .context("the atom set is infinite; pass --box")?,
            json!("complete"),
        ),
        (LoadedMonoid::Backslash(b), None) => {
            if b.covers_all_axes() {
                let hi = Point::new(vec![
                    b.semigroup().atoms().last().copied().unwrap_or(0);
                    b.dim()
                ]);
                (
                    b.atoms_in_box(&PointBox::from_origin(hi)),
                    json!("complete"),
                )
            } else {
                bail!("the atom set is infinite (J misses an axis); pass --box");
            }
        }
        (LoadedMonoid::Atoms(a), None) => (a.basis().atoms().to_vec(), json!("complete")),
    };
    Ok((
        Report::new(
            "atoms",
            monoid_summary(&loaded),
            json!({
                "scope": scope,
                "count": atoms.len(),
                "atoms": report::points_json(&atoms),
            }),
        ),
        false,
    ))
}

fn command_minimals(cli: &Cli) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let result = match &loaded {
        LoadedMonoid::Ideal { monoid, dropped } => json!({
            "minimals": report::points_json(monoid.minimals()),
            "dropped_generators": report::points_json(dropped),
        }),
        LoadedMonoid::Backslash(b) => {
            let minimals = b.minimals();
            json!({
                "minimals": report::points_json(&minimals.points),
                "formula_proven": minimals.formula_proven,
            })
        }
        LoadedMonoid::Atoms(a) => json!({
            "minimals": report::points_json(&idealext::minimals_of(
                a.basis().atoms().to_vec()
            )),
        }),
    };
    Ok((Report::new("minimals", monoid_summary(&loaded), result), false))
}

fn command_core(cli: &Cli) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let LoadedMonoid::Ideal { monoid, .. } = &loaded else {
        bail!("core decomposition is defined for ideal extensions only");
    };
    let core = monoid.core();
    let result = json!({
        "unit_axes": core.unit_axes.iter().map(|l| l + 1).collect::<Vec<_>>(),
        "core_axes": core.core_axes.iter().map(|j| j + 1).collect::<Vec<_>>(),
        "core_minimals": core
            .core
            .as_ref()
            .map(|c| report::points_json(c.minimals()))
            .unwrap_or(json!([])),
        "core_trivial": core.core.is_none(),
    });
    Ok((Report::new("core", monoid_summary(&loaded), result), false))
}

fn command_factorize(cli: &Cli, arg: &ElemArg) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    expect_dim(&loaded, &arg.elem)?;
    let monoid = loaded.as_monoid();
    let basis_atoms = monoid.atoms_in_box(&PointBox::from_origin(arg.elem.clone()));
    let basis = AtomBasis::new(monoid.dim(), basis_atoms)?;
    let zs = basis.factorizations(&arg.elem);
    let result = json!({
        "elem": arg.elem,
        "basis": report::points_json(basis.atoms()),
        "count": zs.len(),
        "factorizations": zs.iter().map(|z| json!({
            "exponents": z.dense(),
            "length": z.length(),
        })).collect::<Vec<_>>(),
    });
    Ok((Report::new("factorize", monoid_summary(&loaded), result), false))
}

fn command_lengths(cli: &Cli, arg: &ElemArg) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    expect_dim(&loaded, &arg.elem)?;
    let lengths = invariants::lengths_of(loaded.as_monoid(), &arg.elem);
    Ok((
        Report::new(
            "lengths",
            monoid_summary(&loaded),
            json!({"elem": arg.elem, "lengths": lengths}),
        ),
        false,
    ))
}

fn command_ell(cli: &Cli, arg: &ElemArg) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    expect_dim(&loaded, &arg.elem)?;
    let lengths = invariants::lengths_of(loaded.as_monoid(), &arg.elem);
    let ell = lengths
        .iter()
        .next()
        .copied()
        .ok_or_else(|| anyhow!("element has no factorization"))?;
    Ok((
        Report::new(
            "ell",
            monoid_summary(&loaded),
            json!({"elem": arg.elem, "ell": ell}),
        ),
        false,
    ))
}

fn command_delta(cli: &Cli, elem: Option<&Point>, boxed: Option<&Point>) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let result = match (elem, boxed) {
        (Some(elem), _) => {
            expect_dim(&loaded, elem)?;
            let lengths: Vec<u64> = invariants::lengths_of(loaded.as_monoid(), elem)
                .into_iter()
                .collect();
            if lengths.is_empty() {
                bail!("element has no factorization");
            }
            let delta: Vec<u64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
            json!({"elem": elem, "delta": delta, "provenance": "exact"})
        }
        (None, boxed) => {
            let reported = monoid_delta(&loaded, boxed)?;
            json!({
                "delta": reported.value().map(|d| d.iter().copied().collect::<Vec<u64>>()),
                "provenance": reported.provenance(),
            })
        }
    };
    Ok((Report::new("delta", monoid_summary(&loaded), result), false))
}

fn monoid_delta(
    loaded: &LoadedMonoid,
    boxed: Option<&Point>,
) -> Result<Reported<std::collections::BTreeSet<u64>>> {
    if let Some(hi) = boxed {
        expect_dim(loaded, hi)?;
        return Ok(invariants::delta_in_box(
            loaded.as_monoid(),
            &PointBox::from_origin(hi.clone()),
        ));
    }
    match loaded {
        LoadedMonoid::Ideal { monoid, .. } => invariants::delta_monoid(monoid)
            .context("monoid-level delta needs finite gaps and verified gap absorption; pass --box"),
        LoadedMonoid::Backslash(b) => {
            let betti = complete_backslash_betti(b)
                .ok_or_else(|| anyhow!("no complete Betti scan for this monoid; pass --box"))?;
            Ok(Reported::Exact(invariants::delta_over(b, &betti)))
        }
        LoadedMonoid::Atoms(_) => bail!("monoid-level delta needs --box for atom-basis monoids"),
    }
}

/// Complete Betti set of a backslash monoid, available when T is ordinary
/// and J covers all axes: Betti elements are sums of two atoms, whose
/// degrees are at most 4m−2.
fn complete_backslash_betti(b: &idealext::BackslashMonoid) -> Option<Vec<Point>> {
    let m = b.semigroup().is_ordinary()?;
    if !b.covers_all_axes() {
        return None;
    }
    let hi = Point::new(vec![4 * m - 2; b.dim()]);
    Some(betti_in_box(b, &PointBox::from_origin(hi)).elements)
}

fn command_elasticity(cli: &Cli, elem: Option<&Point>) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let result = match elem {
        Some(elem) => {
            expect_dim(&loaded, elem)?;
            let lengths = invariants::lengths_of(loaded.as_monoid(), elem);
            let min = *lengths
                .iter()
                .next()
                .ok_or_else(|| anyhow!("element has no factorization"))?;
            if min == 0 {
                bail!("elasticity of the identity is undefined");
            }
            let max = *lengths.iter().next_back().unwrap();
            json!({
                "elem": elem,
                "elasticity": rational_string(idealext::Rational::new(max, min)),
                "provenance": "exact",
            })
        }
        None => match &loaded {
            LoadedMonoid::Backslash(b) => {
                let summary = b.invariant_summary(default_scan_bound(b));
                json!({
                    "elasticity": summary.elasticity.value().map(|r| rational_string(*r)),
                    "provenance": summary.elasticity.provenance(),
                })
            }
            _ => bail!("monoid-level elasticity is only reported for backslash monoids; pass --elem"),
        },
    };
    Ok((Report::new("elasticity", monoid_summary(&loaded), result), false))
}

fn command_betti(cli: &Cli, arg: &OptionalBox) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let (elements, completeness) = match (&loaded, &arg.boxed) {
        (_, Some(hi)) => {
            expect_dim(&loaded, hi)?;
            let list = betti_in_box(loaded.as_monoid(), &PointBox::from_origin(hi.clone()));
            (list.elements, "box-relative")
        }
        (LoadedMonoid::Ideal { monoid, .. }, None) => {
            let list = betti_elements(monoid).context(
                "complete Betti sets need finite gaps and verified gap absorption; pass --box",
            )?;
            (list.elements, "complete")
        }
        (LoadedMonoid::Backslash(b), None) => {
            let elements = complete_backslash_betti(b).ok_or_else(|| {
                anyhow!("no complete Betti scan for this backslash monoid; pass --box")
            })?;
            (elements, "complete")
        }
        (LoadedMonoid::Atoms(_), None) => {
            bail!("Betti scans of atom-basis monoids need --box")
        }
    };
    Ok((
        Report::new(
            "betti",
            monoid_summary(&loaded),
            json!({
                "completeness": completeness,
                "count": elements.len(),
                "betti": report::points_json(&elements),
            }),
        ),
        false,
    ))
}

fn command_catenary(
    cli: &Cli,
    elem: Option<&Point>,
    boxed: Option<&Point>,
) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let result = match (elem, boxed) {
        (Some(elem), _) => {
            expect_dim(&loaded, elem)?;
            let c = catenary_elem(loaded.as_monoid(), elem)?;
            let cross = catenary_rclass_formula(loaded.as_monoid(), elem).ok();
            json!({
                "elem": elem,
                "catenary": c,
                "r_class_formula": cross,
                "provenance": "exact",
            })
        }
        (None, Some(hi)) => {
            expect_dim(&loaded, hi)?;
            let reported =
                invariants::catenary_in_box(loaded.as_monoid(), &PointBox::from_origin(hi.clone()))?;
            json!({
                "catenary": reported.value(),
                "provenance": reported.provenance(),
            })
        }
        (None, None) => match &loaded {
            LoadedMonoid::Ideal { monoid, .. } => {
                let reported = invariants::catenary_monoid(monoid).context(
                    "monoid-level catenary needs finite gaps and verified gap absorption; pass --box",
                )?;
                json!({
                    "catenary": reported.value(),
                    "provenance": reported.provenance(),
                })
            }
            LoadedMonoid::Backslash(b) => {
                let summary = b.invariant_summary(default_scan_bound(b));
                match summary.catenary {
                    Reported::Unknown => {
                        bail!("no closed form for this backslash monoid; pass --box")
                    }
                    reported => json!({
                        "catenary": reported.value(),
                        "provenance": reported.provenance(),
                    }),
                }
            }
            LoadedMonoid::Atoms(_) => {
                bail!("monoid-level catenary needs --box for atom-basis monoids")
            }
        },
    };
    Ok((Report::new("catenary", monoid_summary(&loaded), result), false))
}

fn command_omega(cli: &Cli, elem: Option<&Point>, cap: Option<u64>) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let as_ideal = |loaded: &LoadedMonoid| -> Result<IdealExtension> {
        match loaded {
            LoadedMonoid::Ideal { monoid, .. } => Ok(monoid.clone()),
            LoadedMonoid::Backslash(b) => {
                if b.semigroup().is_ordinary().is_none() {
                    bail!("omega is computed on ideal extensions; this backslash monoid is not one (T is not ordinary)");
                }
                Ok(IdealExtension::new(b.dim(), b.minimals().points)?)
            }
            LoadedMonoid::Atoms(_) => {
                bail!("omega is only computed for ideal extensions (and backslash monoids with ordinary T)")
            }
        }
    };
    let result = match elem {
        Some(elem) => {
            expect_dim(&loaded, elem)?;
            let monoid = as_ideal(&loaded)?;
            let omega = omega_elem(&monoid, elem, cap)?;
            json!({
                "elem": elem,
                "value": omega.value,
                "lower_bound": omega.lower_bound,
                "upper_bound": omega.upper_bound,
                "witness_count": omega.witnesses.len(),
            })
        }
        None => match &loaded {
            LoadedMonoid::Backslash(b) => {
                let summary = b.invariant_summary(default_scan_bound(b));
                match summary.omega {
                    Reported::Unknown => bail!("no omega value for this backslash monoid"),
                    reported => json!({
                        "value": reported.value(),
                        "provenance": reported.provenance(),
                    }),
                }
            }
            _ => {
                let monoid = as_ideal(&loaded)?;
                let omega = omega_monoid(&monoid)?;
                json!({
                    "value": omega.value,
                    "lower_bound": omega.lower_bound,
                    "upper_bound": omega.upper_bound,
                    "attained_at": omega.attained_at,
                    "infinite_axis": omega.infinite_axis,
                })
            }
        },
    };
    Ok((Report::new("omega", monoid_summary(&loaded), result), false))
}

fn command_pi_profile(cli: &Cli, axis: usize, vmax: Option<u64>) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let LoadedMonoid::Ideal { monoid, .. } = &loaded else {
        bail!("pi profiles are defined for two-dimensional ideal extensions");
    };
    if monoid.dim() != 2 {
        bail!("pi profiles need dimension 2, monoid has dimension {}", monoid.dim());
    }
    if axis != 1 && axis != 2 {
        bail!("--axis must be 1 or 2");
    }
    let base = 2 - axis; // 0-based index of the base coordinate
    let vmax = vmax.unwrap_or_else(|| {
        2 * monoid
            .minimals()
            .iter()
            .map(|m| m.coord(base))
            .max()
            .unwrap_or(0)
            + 1
    });
    let profile = PiProfile::compute(monoid, axis, vmax)?;
    let result = json!({
        "axis": axis,
        "v_max": vmax,
        "pi1": profile.pi1,
        "pi2": profile.pi2,
        "a_values": profile.a_values,
    });
    Ok((Report::new("pi-profile", monoid_summary(&loaded), result), false))
}

fn command_check(cli: &Cli, which: &str, boxed: Option<&Point>) -> Result<(Report, bool)> {
    let loaded = load(cli)?;
    let boxed = match boxed {
        Some(hi) => {
            expect_dim(&loaded, hi)?;
            Some(PointBox::from_origin(hi.clone()))
        }
        None => None,
    };
    let (result, violation) = match which {
        "ga" => check_ga(&loaded, boxed.as_ref())?,
        "2a-intervals" => check_two_atom_intervals(&loaded, boxed.as_ref())?,
        "length-monotone" => check_lengths(&loaded, boxed.as_ref(), false)?,
        "lengths-intervals" => check_lengths(&loaded, boxed.as_ref(), true)?,
        other => bail!(
            "unknown check {other:?}; expected ga, 2a-intervals, length-monotone, or lengths-intervals"
        ),
    };
    Ok((
        Report::new("check", monoid_summary(&loaded), result),
        violation,
    ))
}

fn check_ga(
    loaded: &LoadedMonoid,
    boxed: Option<&PointBox>,
) -> Result<(serde_json::Value, bool)> {
    let check = match (loaded, boxed) {
        (LoadedMonoid::Ideal { monoid, .. }, None) => monoid
            .is_gap_absorbing()
            .context("the gap set is infinite; pass --box for a box-relative check")?,
        (LoadedMonoid::Ideal { monoid, .. }, Some(b)) => monoid.is_gap_absorbing_in_box(b),
        (LoadedMonoid::Backslash(b), _) => b.is_gap_absorbing(),
        (LoadedMonoid::Atoms(_), _) => {
            bail!("gap absorption needs a gap set; atom-basis monoids are not supported")
        }
    };
    let result = json!({
        "check": "ga",
        "holds": check.holds,
        "box_relative": check.box_relative,
        "witness": check.witness,
    });
    Ok((result, !check.holds))
}

fn check_two_atom_intervals(
    loaded: &LoadedMonoid,
    boxed: Option<&PointBox>,
) -> Result<(serde_json::Value, bool)> {
    let check = match (loaded, boxed) {
        (LoadedMonoid::Ideal { monoid, .. }, None) => monoid
            .two_atoms_interval_check()
            .context("the atom set is infinite; pass --box for a box-relative check")?,
        (LoadedMonoid::Ideal { monoid, .. }, Some(b)) => monoid.two_atoms_interval_check_in_box(b),
        (_, Some(b)) => {
            let atoms = loaded.as_monoid().atoms_in_box(b);
            let sums: Vec<Point> = pairwise_sums(&atoms)
                .into_iter()
                .filter(|s| b.contains(s))
                .collect();
            interval_closure_check(&sums, loaded.dim(), true)
        }
        (_, None) => bail!("pass --box for this monoid kind"),
    };
    let result = json!({
        "check": "2a-intervals",
        "holds": check.holds,
        "box_relative": check.box_relative,
        "witness": check.witness,
    });
    Ok((result, !check.holds))
}

fn check_lengths(
    loaded: &LoadedMonoid,
    boxed: Option<&PointBox>,
    intervals: bool,
) -> Result<(serde_json::Value, bool)> {
    let boxed = boxed.ok_or_else(|| anyhow!("this check scans a box; pass --box"))?;
    let monoid = loaded.as_monoid();
    let basis = AtomBasis::new(monoid.dim(), monoid.atoms_in_box(boxed))?;
    let table = basis.lengths_table(boxed.hi());
    let name = if intervals {
        "lengths-intervals"
    } else {
        "length-monotone"
    };
    for p in boxed.points() {
        if !monoid.contains(&p) {
            continue;
        }
        let lengths: Vec<u64> = table.get(&p).iter().copied().collect();
        if lengths.is_empty() {
            continue;
        }
        if intervals {
            if lengths.windows(2).any(|w| w[1] - w[0] > 1) {
                let result = json!({
                    "check": name, "holds": false,
                    "witness": {"elem": p, "lengths": lengths},
                });
                return Ok((result, true));
            }
        } else {
            let ell = lengths[0];
            for axis in 0..monoid.dim() {
                let bumped = p.add_unit(axis);
                if !boxed.contains(&bumped) {
                    continue;
                }
                let Some(&bumped_ell) = table.get(&bumped).iter().next() else {
                    continue;
                };
                if bumped_ell < ell || bumped_ell > ell + 1 {
                    let result = json!({
                        "check": name, "holds": false,
                        "witness": {"elem": p, "ell": ell, "bumped": bumped, "bumped_ell": bumped_ell},
                    });
                    return Ok((result, true));
                }
            }
        }
    }
    Ok((json!({"check": name, "holds": true, "box": boxed.hi()}), false))
}

#[allow(clippy::too_many_arguments)]
fn command_fuzz(
    trials: u64,
    dim: usize,
    dim_max: Option<usize>,
    max_coord: u64,
    seed: u64,
    checks: Option<&str>,
    budget_secs: u64,
    out: Option<&str>,
) -> Result<(Report, bool)> {
    let mut config = FuzzConfig::new(trials, dim, max_coord, seed);
    config.dim_max = dim_max.unwrap_or(dim).max(dim);
    config.per_trial_budget = Duration::from_secs(budget_secs);
    if let Some(list) = checks {
        let mut selected = Vec::new();
        for name in list.split(',') {
            let check = CheckKind::from_name(name.trim())
                .ok_or_else(|| anyhow!("unknown check {name:?}"))?;
            selected.push(check);
        }
        config.checks = selected;
    }
    let summary = fuzz(&config);
    let mut written = Vec::new();
    if summary.has_failures() {
        if let Some(dir) = out {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {dir}"))?;
            for failure in &summary.failures {
                let name = format!(
                    "counterexample-trial{}-{}.json",
                    failure.trial,
                    failure.check.name()
                );
                let path = std::path::Path::new(dir).join(&name);
                std::fs::write(&path, serde_json::to_string_pretty(&failure.spec)?)
                    .with_context(|| format!("writing {}", path.display()))?;
                written.push(name);
            }
        }
    }
    let result = json!({
        "trials": summary.trials,
        "finite_gap_trials": summary.finite_gap_trials,
        "seed": seed,
        "tallies": summary
            .tallies
            .iter()
            .map(|(check, tally)| {
                (check.name().to_string(), json!({
                    "pass": tally.pass, "fail": tally.fail, "skip": tally.skip,
                }))
            })
            .collect::<serde_json::Map<String, serde_json::Value>>(),
        "failures": summary.failures.iter().map(|f| json!({
            "trial": f.trial,
            "check": f.check.name(),
            "class": f.class.label(),
            "spec": f.spec,
            "detail": f.detail,
        })).collect::<Vec<_>>(),
        "counterexample_files": written,
    });
    let violation = summary.has_failures();
    Ok((
        Report::new("fuzz", json!({"kind": "random_ideal_extensions"}), result),
        violation,
    ))
}
