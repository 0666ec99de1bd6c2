use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use frobex_core::cartier::{
    bound_check, fedder_fpure, pair_exponent, validate_fgraded, DEFAULT_SLACK,
};
use frobex_core::{Ideal, MonomialOrder, Polynomial, Ring};
use log::info;

use crate::cache::DiskCache;
use crate::error::{CliError, CliResult};
use crate::problem::{Problem, SubalgebraDecl};
use crate::report::{BoundDoc, ComplexityDoc, LevelDoc, Output, VerdictDoc, WitnessDoc};

/// Largest allowed `p^e · d(I)` without `--force`.
pub const COST_LIMIT: u128 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Reduced Groebner basis of I
    Gb,
    /// Colon ideal (I : J)
    Colon,
    /// Bracket power I^[p^e]
    Bracket,
    /// Krull dimension of S/I
    Dim,
    /// Hilbert function of S/I in degrees 0..=degree
    Hf,
    /// Minimal generators of I
    Mingens,
    /// Fedder's F-purity test
    Fedder,
    /// Checks the F-graded system of the subalgebra up to emax
    ValidateFgraded,
    /// Complexity sequence c_1..c_emax
    Cseq,
    /// Exponent estimate against the degree bound max{l, 2^(n-2)} * dim R
    BoundCheck,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub e: u32,
    pub degree: u64,
    pub slack: f64,
    pub force: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            e: 1,
            degree: 10,
            slack: DEFAULT_SLACK,
            force: false,
            cache_dir: None,
        }
    }
}

fn guard(problem: &Problem, e: u32, force: bool) -> CliResult<()> {
    if force {
        return Ok(());
    }
    let cost = (problem.p as u128)
        .checked_pow(e)
        .and_then(|q| q.checked_mul(problem.max_generator_degree().ok()? as u128));
    match cost {
        Some(c) if c <= COST_LIMIT => Ok(()),
        _ => Err(CliError::Usage(format!(
            "p^{e} * d(I) exceeds 2^40; bracket powers at this level would overflow the exponent guard \
             or take very long (pass --force to try anyway)"
        ))),
    }
}

fn texts(gens: &[Polynomial]) -> Vec<String> {
    gens.iter().map(Polynomial::to_string).collect()
}

/// Minimal generators with the unit and zero ideals handled.
fn canonical_generators(i: &Ideal) -> CliResult<Vec<String>> {
    if i.is_zero() {
        return Ok(Vec::new());
    }
    if i.is_unit()? {
        return Ok(vec!["1".into()]);
    }
    Ok(texts(&i.minimal_generators()?))
}

fn ring_for(problem: &Problem, opts: &Options) -> CliResult<Ring> {
    let store = opts.cache_dir.as_deref().and_then(DiskCache::open);
    Ok(match store {
        Some(s) => problem.ring_with_store(s as Arc<dyn frobex_core::BasisStore>)?,
        None => problem.ring()?,
    })
}

/// Runs `cmd` on `problem`. The order and emax in `problem` are the effective
/// values (flags already applied).
pub fn run(cmd: Command, problem: &Problem, opts: &Options) -> CliResult<Output> {
    let ring = ring_for(problem, opts)?;
    let digest = problem.digest();
    let base = problem.base_ideal(&ring)?;
    info!("{cmd:?} on I = {base} over F_{}", problem.p);
    Ok(match cmd {
        Command::Gb => {
            let gb = base.groebner_basis()?;
            Output::Basis {
                digest,
                order: problem.order.to_string(),
                basis: texts(gb.elements()),
            }
        }
        Command::Colon => {
            let j = problem.divisor.as_ref().ok_or_else(|| {
                CliError::Usage(
                    "colon needs a divisor ideal `J = [...]` in the problem file".into(),
                )
            })?;
            let j = problem.ideal_of(&ring, j)?;
            Output::Generators {
                digest,
                operation: "colon".into(),
                generators: canonical_generators(&base.colon(&j)?)?,
            }
        }
        Command::Bracket => {
            guard(problem, opts.e, opts.force)?;
            Output::Generators {
                digest,
                operation: format!("bracket e={}", opts.e),
                generators: texts(base.bracket_power(opts.e)?.gens()),
            }
        }
        Command::Dim => Output::Dimension {
            digest,
            dim: base.krull_dimension()?,
        },
        Command::Hf => Output::Hilbert {
            digest,
            values: base.hilbert_values(opts.degree)?,
        },
        Command::Mingens => {
            let gens = base.minimal_generators()?;
            let generating_degree = gens
                .iter()
                .filter_map(Polynomial::total_degree)
                .max()
                .unwrap_or(0);
            Output::MinimalGenerators {
                digest,
                generators: texts(&gens),
                generating_degree,
            }
        }
        Command::Fedder => {
            guard(problem, opts.e, opts.force)?;
            Output::Fedder {
                digest,
                e: opts.e,
                fpure: fedder_fpure(&base, opts.e)?,
            }
        }
        Command::ValidateFgraded => {
            guard(problem, problem.emax, opts.force)?;
            let levels = fgraded_levels(problem, &ring)?;
            let witness = validate_fgraded(&levels, problem.emax)?;
            Output::FGraded {
                digest,
                horizon: problem.emax,
                ok: witness.is_none(),
                witness: witness.map(|w| WitnessDoc {
                    e: w.e,
                    e_prime: w.e_prime,
                    generator: w.generator,
                }),
            }
        }
        Command::Cseq => Output::Complexity(complexity(problem, &ring, opts)?.0),
        Command::BoundCheck => {
            let (_, report) = complexity(problem, &ring, opts)?;
            let v = bound_check(&report, opts.slack);
            Output::Verdict(VerdictDoc {
                digest,
                estimate: v.estimate,
                l: v.l,
                n: v.n,
                dim: v.dim,
                rhs: v.rhs,
                slack: v.slack,
                ok: v.ok,
            })
        }
    })
}

/// The ideals `a_0, ..., a_emax` of the declared F-graded system.
pub fn fgraded_levels(problem: &Problem, ring: &Ring) -> CliResult<BTreeMap<u32, Ideal>> {
    let unit = Ideal::unit(ring).reordered(problem.order);
    let mut out = BTreeMap::new();
    match &problem.subalgebra {
        SubalgebraDecl::Total => {
            for e in 0..=problem.emax {
                out.insert(e, unit.clone());
            }
        }
        SubalgebraDecl::Pair { a, t } => {
            let a = problem.ideal_of(ring, a)?;
            for e in 0..=problem.emax {
                out.insert(e, a.power(pair_exponent(*t, problem.p, e)?)?);
            }
        }
        SubalgebraDecl::Explicit { levels } => {
            for (e, g) in levels {
                out.insert(*e, problem.ideal_of(ring, g)?);
            }
        }
    }
    Ok(out)
}

fn complexity(
    problem: &Problem,
    ring: &Ring,
    opts: &Options,
) -> CliResult<(ComplexityDoc, frobex_core::ComplexityReport)> {
    guard(problem, problem.emax, opts.force)?;
    let spec = problem.spec(ring)?;
    let report = spec.complexity_sequence(problem.emax)?;
    let doc = ComplexityDoc {
        digest: problem.digest(),
        p: report.p,
        n: report.n,
        dim: report.dim,
        per_e: report
            .records
            .iter()
            .map(|r| LevelDoc {
                e: r.e,
                c_e: r.c,
                d_e: r.d,
                ms: r.millis,
            })
            .collect(),
        exponent_estimate: report.exponent_estimate,
        bound: BoundDoc {
            l: report.bound.l,
            rhs: report.bound.rhs,
            ok: report.bound.ok,
        },
    };
    Ok((doc, report))
}

/// Applies command-line overrides to a parsed problem.
pub fn with_overrides(
    mut problem: Problem,
    order: Option<MonomialOrder>,
    emax: Option<u32>,
) -> CliResult<Problem> {
    if let Some(o) = order {
        problem.order = o;
    }
    if let Some(e) = emax {
        if e == 0 {
            return Err(CliError::Usage("--emax must be at least 1".into()));
        }
        problem.emax = e;
    }
    Ok(problem)
}
