//! Fourier–Motzkin decision of Poly(gens) ∩ ℝ≥0ⁿ ≠ ∅, independent of the
//! simplex code.

use num_traits::{Signed, Zero};
use vanishlab::{Point, Rational};

/// Row a·c ≤ b.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Rational>,
    b: Rational,
}

impl Ineq {
    /// Scales so the first nonzero coefficient has magnitude 1.
    fn normalized(mut self) -> Ineq {
        if let Some(lead) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in self.a.iter_mut() {
                *x /= &lead;
            }
            self.b /= &lead;
        }
        self
    }
}

fn eliminate(rows: Vec<Ineq>, var: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.a[var].is_positive() {
            pos.push(r);
        } else if r.a[var].is_negative() {
            neg.push(r);
        } else {
            out.push(r);
        }
    }
    for p in &pos {
        for n in &neg {
            let sp = -&n.a[var];
            let sn = p.a[var].clone();
            let a = p.a.iter().zip(&n.a).map(|(x, y)| x * &sp + y * &sn).collect();
            let b = &p.b * &sp + &n.b * &sn;
            out.push(Ineq { a, b }.normalized());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// True when the convex hull of `gens` meets the nonnegative orthant.
pub fn meets_orthant(gens: &[Point]) -> bool {
    let k = gens.len();
    let n = gens[0].arity();
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for i in 0..k {
        let mut a = vec![Rational::zero(); k];
        a[i] = -one.clone();
        rows.push(Ineq { a, b: Rational::zero() });
    }
    rows.push(Ineq { a: vec![one.clone(); k], b: one.clone() });
    rows.push(Ineq { a: vec![-one.clone(); k], b: -one.clone() });
    for j in 0..n {
        let a = gens.iter().map(|g| -g.coords()[j].clone()).collect();
        rows.push(Ineq { a, b: Rational::zero() });
    }
    for var in 0..k {
        rows = eliminate(rows, var);
    }
    rows.iter().all(|r| !r.b.is_negative())
}
