use std::collections::BTreeMap;
use std::fmt;

use super::gaussian::GaussianRational;

/// Σ c_λ(z)e^{λz} in one variable, with Gaussian-rational frequencies λ and
/// polynomial coefficients c_λ stored densely from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<GaussianRational, Vec<GaussianRational>>,
}

fn trim(c: &mut Vec<GaussianRational>) {
    while c.last().is_some_and(GaussianRational::is_zero) {
        c.pop();
    }
}

fn add_into(acc: &mut Vec<GaussianRational>, c: &[GaussianRational]) {
    if acc.len() < c.len() {
        acc.resize(c.len(), GaussianRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(c) {
        *a = &*a + b;
    }
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c(z)·e^{λz}.
    pub fn term(lambda: GaussianRational, coeffs: Vec<GaussianRational>) -> Self {
        let mut e = Self::zero();
        e.add_term(lambda, &coeffs);
        e
    }

    /// z^j·e^{λz}.
    pub fn basis(lambda: GaussianRational, j: usize) -> Self {
        let mut c = vec![GaussianRational::zero(); j + 1];
        c[j] = GaussianRational::one();
        Self::term(lambda, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = &GaussianRational> {
        self.terms.keys()
    }

    pub fn coefficient(&self, lambda: &GaussianRational) -> Option<&[GaussianRational]> {
        self.terms.get(lambda).map(Vec::as_slice)
    }

    pub fn add_term(&mut self, lambda: GaussianRational, coeffs: &[GaussianRational]) {
        let entry = self.terms.entry(lambda.clone()).or_default();
        add_into(entry, coeffs);
        trim(entry);
        if entry.is_empty() {
            self.terms.remove(&lambda);
        }
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: &GaussianRational) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (l, c) in &self.terms {
            let scaled: Vec<_> = c.iter().map(|a| a * k).collect();
            out.add_term(l.clone(), &scaled);
        }
        out
    }

    /// D(c(z)e^{λz}) = (c′(z) + λc(z))e^{λz}.
    pub fn derivative(&self) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (l, c) in &self.terms {
            let mut d: Vec<GaussianRational> = c.iter().map(|a| a * l).collect();
            for (j, a) in c.iter().enumerate().skip(1) {
                let jj = GaussianRational::from_ints(j as i64, 0);
                d[j - 1] = &d[j - 1] + &(a * &jj);
            }
            out.add_term(l.clone(), &d);
        }
        out
    }
}

/// Λ(D)E for Λ(ξ) = Σ λ_k ξ^k given by its coefficients from the constant
/// term up, evaluated by Horner's scheme in D.
pub fn expoly_apply(symbol: &[GaussianRational], e: &ExpPoly) -> ExpPoly {
    let mut acc = ExpPoly::zero();
    for c in symbol.iter().rev() {
        acc = acc.derivative().add(&e.scale(c));
    }
    acc
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (l, c) in &self.terms {
            for (j, a) in c.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "({a})")?;
                if j > 0 {
                    write!(f, "*z^{j}")?;
                }
                if !l.is_zero() {
                    write!(f, "*e^(({l})z)")?;
                }
            }
        }
        Ok(())
    }
}
