//! Sparse real polynomials with exact symbolic derivatives.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coef: f64,
    /// One exponent per variable.
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polynomial {
    pub vars: usize,
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(vars: usize, terms: Vec<Term>) -> Option<Self> {
        terms.iter().all(|t| t.exps.len() == vars).then_some(Polynomial { vars, terms })
    }

    /// `c_0 + Σ c_i x_i`.
    pub fn affine(constant: f64, linear: &[f64]) -> Self {
        let vars = linear.len();
        let mut terms = vec![Term { coef: constant, exps: vec![0; vars] }];
        for (i, &c) in linear.iter().enumerate() {
            let mut exps = vec![0; vars];
            exps[i] = 1;
            terms.push(Term { coef: c, exps });
        }
        Polynomial { vars, terms }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * t.exps.iter().zip(x).map(|(&e, &v)| v.powi(e as i32)).product::<f64>())
            .sum()
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[var] > 0)
            .map(|t| {
                let mut exps = t.exps.clone();
                exps[var] -= 1;
                Term { coef: t.coef * t.exps[var] as f64, exps }
            })
            .collect();
        Polynomial { vars: self.vars, terms }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (0..self.vars).map(|i| self.derivative(i).eval(x)).collect()
    }

    pub fn hessian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        (0..self.vars)
            .map(|i| {
                let di = self.derivative(i);
                (0..self.vars).map(|j| di.derivative(j).eval(x)).collect()
            })
            .collect()
    }
}
