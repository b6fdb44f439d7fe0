use clap::ValueEnum;
use primcycle::families::frobenius_divisors;
use primcycle::field::FiniteField;
use primcycle::verifier::{
    agl2_elimination_check, construction_sweep, coprime_comment_check, converse_search, forward_check,
    gamma_cycle_check, jordan_transitivity_check, mathieu_elimination_check, residue_orbit_check,
    semilinear_order_identity_check, wreath_comment_check, CheckReport, JordanInput, VerifyError,
    MATHIEU_CASES,
};
use primcycle::Config;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Forward,
    Converse,
    Gamma,
    Residues,
    Mathieu,
    Agl2,
    Comments,
    All,
}

pub struct Plan {
    pub converse_max: usize,
    pub forward_max: usize,
    pub agl2_max: u32,
}

pub const GAMMA_FIELDS: [(u64, u32); 8] = [(3, 2), (5, 2), (3, 3), (7, 2), (3, 4), (2, 2), (2, 3), (2, 4)];
pub const SEMILINEAR_FIELDS: [(u64, u32); 5] = [(3, 2), (5, 2), (3, 3), (2, 4), (2, 6)];
pub const RESIDUE_FIELDS: [(u64, u32); 5] = [(5, 1), (7, 1), (3, 2), (5, 2), (3, 3)];
pub const COPRIME_TRIALS: usize = 200;

pub fn run(
    suite: Suite,
    plan: &Plan,
    config: &Config,
    emit: &mut impl FnMut(CheckReport),
) -> Result<(), VerifyError> {
    let all = suite == Suite::All;
    if all || suite == Suite::Forward {
        emit(forward_check(plan.forward_max, config)?);
        let groups: Vec<JordanInput> = construction_sweep(plan.forward_max, config)
            .into_iter()
            .filter_map(|(_, _, g)| g.ok().and_then(|g| JordanInput::from_constructed(&g)))
            .collect();
        emit(jordan_transitivity_check(&groups)?);
    }
    if all || suite == Suite::Converse {
        for n in 2..=plan.converse_max {
            for k in 0..=n - 2 {
                emit(converse_search(n, k, config)?);
            }
        }
    }
    if all || suite == Suite::Gamma {
        for (p, e) in GAMMA_FIELDS {
            emit(gamma_cycle_check(p, e, config)?);
        }
        for (p, e) in SEMILINEAR_FIELDS {
            let field = FiniteField::with_cap(p, e, config.degree_cap).map_err(primcycle::families::FamilyError::from)?;
            let a = field.primitive_element().index() as u32;
            for f in frobenius_divisors(e) {
                emit(semilinear_order_identity_check(p, e, f, a, config)?);
            }
        }
    }
    if all || suite == Suite::Residues {
        for (p, e) in RESIDUE_FIELDS {
            emit(residue_orbit_check(p, e, config)?);
        }
    }
    if all || suite == Suite::Mathieu {
        for (name, ks) in MATHIEU_CASES {
            emit(mathieu_elimination_check(name, ks, config)?);
        }
    }
    if all || suite == Suite::Agl2 {
        emit(agl2_elimination_check(plan.agl2_max)?);
    }
    if all || suite == Suite::Comments {
        for m in 2..=12 {
            for blocks in 2..=24 / m {
                emit(wreath_comment_check(m, blocks)?);
            }
        }
        emit(coprime_comment_check(COPRIME_TRIALS, config)?);
    }
    Ok(())
}
