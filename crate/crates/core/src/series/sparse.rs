use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Monomial;

/// An exact Laurent polynomial with integer coefficients, kept sorted by
/// exponent with no zero terms. Used as an exact factor: multiplying or
/// dividing a truncated series by it loses no more precision than the
/// polynomial's lowest exponent dictates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    terms: Vec<(i64, BigInt)>,
}

impl SparsePoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        SparsePoly { terms: merged }
    }

    pub fn monomial(m: Monomial) -> Self {
        SparsePoly::from_terms([(m.exponent, BigInt::from(m.sign.value()))])
    }

    /// The Pochhammer factor `1 - m`.
    pub fn one_minus(m: Monomial) -> Self {
        SparsePoly::from_terms([
            (0, BigInt::one()),
            (m.exponent, BigInt::from(-m.sign.value())),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        SparsePoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(e1, c1)| other.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_one_is_zero() {
        assert!(SparsePoly::one_minus(Monomial::ONE).is_zero());
        let two = SparsePoly::one_minus(Monomial::neg_q(0));
        assert_eq!(two.terms(), &[(0, BigInt::from(2))]);
    }

    #[test]
    fn product_merges_terms() {
        let p =
            SparsePoly::one_minus(Monomial::q(1)).mul(&SparsePoly::one_minus(Monomial::neg_q(1)));
        assert_eq!(p.terms(), &[(0, BigInt::one()), (2, BigInt::from(-1))]);
        assert_eq!(p.min_exponent(), Some(0));
        assert_eq!(p.max_exponent(), Some(2));
    }
}
