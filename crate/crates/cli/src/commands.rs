use std::error::Error;
use std::io::Read;

use vanishlab::cases::{
    counterexample_ddv, counterexample_dk, homogeneous_two_monomial_p_check, monomial_case_check,
    monomial_operator_check, one_var_check, phi_case_check, two_monomial_check, CaseStatus, CaseVerdict, TwoTerm,
};
use vanishlab::density::{homogeneous_density, Verdict};
use vanishlab::parse::{parse_op, parse_point, parse_point_list, parse_poly, parse_vars};
use vanishlab::record::Record;
use vanishlab::{
    dk_check, ray_hits_support, vanishing_profile, DiffMode, DiffOp, ExponentVector, LaurentPoly, OrthantMeet, Point,
    RationalPolytope, ToRecords,
};

use crate::{CaseCommand, Cli, Command, Counterexample, Side};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

const CONFIRMED: u8 = 0;
const FAILED: u8 = 1;
const INCONCLUSIVE: u8 = 2;

/// Resolves `-` to stdin, which may be read only once.
struct Inputs {
    stdin_used: bool,
}

impl Inputs {
    fn text(&mut self, arg: &str) -> Result<String> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_used {
            return Err("only one argument may be read from stdin".into());
        }
        self.stdin_used = true;
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s.trim().to_string())
    }

    fn poly(&mut self, arg: &str, vars: &[String]) -> Result<LaurentPoly> {
        Ok(parse_poly(&self.text(arg)?, vars)?)
    }

    fn op(&mut self, arg: &str, vars: &[String]) -> Result<DiffOp> {
        Ok(parse_op(&self.text(arg)?, vars)?)
    }
}

fn vars_or(cli: &Cli, default: &str) -> Result<Vec<String>> {
    Ok(parse_vars(cli.global.vars.as_deref().unwrap_or(default))?)
}

fn point(src: &str, arity: usize) -> Result<Point> {
    Ok(Point(parse_point(src, arity)?))
}

fn case_code(status: CaseStatus) -> u8 {
    match status {
        CaseStatus::Confirmed => CONFIRMED,
        CaseStatus::HypothesisFails | CaseStatus::CheckFailed => FAILED,
        CaseStatus::Inconclusive => INCONCLUSIVE,
    }
}

fn single_term(p: &LaurentPoly) -> Option<ExponentVector> {
    let mut terms = p.iter();
    match (terms.next(), terms.next()) {
        (Some((e, _)), None) => Some(e.clone()),
        _ => None,
    }
}

fn two_terms(p: &LaurentPoly) -> Option<TwoTerm> {
    let terms: Vec<_> = p.iter().collect();
    match terms.as_slice() {
        [(alpha, a), (beta, b)] => Some(TwoTerm::new((*a).clone(), (*alpha).clone(), (*b).clone(), (*beta).clone())),
        _ => None,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut inputs = Inputs { stdin_used: false };
    let horizon = cli.global.horizon;
    let (records, code) = match &cli.command {
        Command::Vanish { op, p, g, laurent } => {
            let vars = vars_or(cli, "x,y")?;
            let op = inputs.op(op, &vars)?;
            let p = inputs.poly(p, &vars)?;
            let g = match g {
                Some(g) => Some(inputs.poly(g, &vars)?),
                None => None,
            };
            let mode = if *laurent { DiffMode::Laurent } else { DiffMode::Polynomial };
            let one = LaurentPoly::one(vars.len());
            let profile = vanishing_profile(&op, &p, g.as_ref().unwrap_or(&one), horizon, mode)?;
            let code = if !profile.hypothesis_holds() {
                FAILED
            } else if g.is_none() || profile.rows.last().is_some_and(|r| r.with_g.is_zero()) {
                CONFIRMED
            } else {
                INCONCLUSIVE
            };
            (profile.to_records(&vars), code)
        }
        Command::Polytope { sigma, beta, point: query } => {
            let vars = vars_or(cli, "x,y")?;
            let n = vars.len();
            let gens = parse_point_list(&inputs.text(sigma)?, n)?;
            let sigma = RationalPolytope::new(gens.into_iter().map(Point).collect())?;
            if let Some(w) = query {
                let w = point(w, n)?;
                let mut r = Record::new("contains").field("point", &w);
                let code = match sigma.contains_point(&w)? {
                    Some(c) => {
                        r.push("member", true);
                        r.push("coefficients", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
                        CONFIRMED
                    }
                    None => {
                        r.push("member", false);
                        FAILED
                    }
                };
                (vec![r], code)
            } else {
                let meet = sigma.orthant_meet();
                let mut records = meet.to_records(&vars);
                let code = match (&meet, beta) {
                    (OrthantMeet::Certificate(cert), Some(b)) => {
                        let b = point(b, n)?;
                        let bound = sigma.moveaway_bound(&b, cert)?;
                        records.push(Record::new("moveaway").field("beta", &b).field("N", bound));
                        CONFIRMED
                    }
                    (OrthantMeet::Certificate(_), None) => CONFIRMED,
                    (OrthantMeet::Witness { .. }, _) => FAILED,
                };
                (records, code)
            }
        }
        Command::Density { p, u, homogeneous } => {
            let vars = vars_or(cli, "x,y")?;
            let p = inputs.poly(p, &vars)?;
            let u = point(u, vars.len())?;
            if *homogeneous {
                let d = homogeneous_density(&p, &u, horizon)?;
                let code = if !d.anomalies.is_empty() {
                    FAILED
                } else if d.hits.is_empty() {
                    INCONCLUSIVE
                } else {
                    CONFIRMED
                };
                (d.to_records(&vars), code)
            } else {
                let report = ray_hits_support(&p, &u, horizon)?;
                let code = match report.verdict() {
                    Verdict::Found => CONFIRMED,
                    _ => INCONCLUSIVE,
                };
                (report.to_records(&vars), code)
            }
        }
        Command::Dk { f } => {
            let vars = vars_or(cli, "x,y")?;
            let f = inputs.poly(f, &vars)?;
            let report = dk_check(&f, horizon)?;
            let code = match report.verdict() {
                Verdict::Consistent => CONFIRMED,
                Verdict::HypothesisFails => FAILED,
                _ => INCONCLUSIVE,
            };
            (report.to_records(&vars), code)
        }
        Command::Case(case) => {
            let (verdict, vars) = run_case(cli, case, &mut inputs)?;
            let code = case_code(verdict.status);
            (verdict.to_records(&vars), code)
        }
        Command::Counterexample { which } => {
            let vars = parse_vars("x,y")?;
            let precision = cli.global.precision;
            let report = match which {
                Counterexample::Ddv => counterexample_ddv(horizon, precision)?,
                Counterexample::Dk => counterexample_dk(horizon, precision)?,
            };
            let code = if report.holds() { CONFIRMED } else { FAILED };
            (report.to_records(&vars), code)
        }
    };
    Ok(Outcome {
        text: crate::output::format(&records, cli.global.format),
        code,
    })
}

fn run_case(cli: &Cli, case: &CaseCommand, inputs: &mut Inputs) -> Result<(CaseVerdict, Vec<String>)> {
    let horizon = cli.global.horizon;
    match case {
        CaseCommand::OneVar { op, p, g } => {
            let vars = vars_or(cli, "x")?;
            let op = inputs.op(op, &vars)?;
            let p = inputs.poly(p, &vars)?;
            let g = inputs.poly(g, &vars)?;
            Ok((one_var_check(&op, &p, &g, horizon)?, vars))
        }
        CaseCommand::Phi { phi, f, g } => {
            let vars = vars_or(cli, "x,y")?;
            if vars.len() != 2 {
                return Err("the phi case needs exactly two variables".into());
            }
            let y = &vars[1..];
            let phi = inputs.poly(phi, y)?;
            let f = inputs.poly(f, y)?;
            let g = inputs.poly(g, &vars)?;
            Ok((phi_case_check(&phi, &f, &g, horizon)?, vars))
        }
        CaseCommand::Monomial { op, p, g, side } => {
            let vars = vars_or(cli, "x,y")?;
            let op = inputs.op(op, &vars)?;
            let p = inputs.poly(p, &vars)?;
            let g = inputs.poly(g, &vars)?;
            let side = side.unwrap_or(if single_term(&p).is_some() { Side::Polynomial } else { Side::Operator });
            let verdict = match side {
                Side::Polynomial => {
                    let alpha = single_term(&p).ok_or("P is not a single monomial")?;
                    monomial_case_check(&op, &alpha, &g, horizon)?
                }
                Side::Operator => {
                    let alpha = single_term(op.symbol()).ok_or("neither P nor the operator is a single monomial")?;
                    monomial_operator_check(&alpha, &p, &g, horizon)?
                }
            };
            Ok((verdict, vars))
        }
        CaseCommand::TwoMonomial { op, p, g, side } => {
            let vars = vars_or(cli, "x,y")?;
            let op = inputs.op(op, &vars)?;
            let p = inputs.poly(p, &vars)?;
            let g = inputs.poly(g, &vars)?;
            let side = side.unwrap_or(if two_terms(op.symbol()).is_some() { Side::Operator } else { Side::Polynomial });
            let verdict = match side {
                Side::Operator => {
                    let term = two_terms(op.symbol()).ok_or("the operator does not have two terms")?;
                    two_monomial_check(&term, &p, &g, horizon)?
                }
                Side::Polynomial => {
                    let term = two_terms(&p).ok_or("neither P nor the operator has two terms")?;
                    homogeneous_two_monomial_p_check(&op, &term, &g, horizon)?
                }
            };
            Ok((verdict, vars))
        }
    }
}
