use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn pow(self, n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            self
        }
    }
}

/// `sign * q^exponent`; the only parameter shape the q-objects need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: Sign,
    pub exponent: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        sign: Sign::Plus,
        exponent: 0,
    };

    pub fn new(sign: Sign, exponent: i64) -> Self {
        Monomial { sign, exponent }
    }

    /// `+q^exponent`
    pub fn q(exponent: i64) -> Self {
        Monomial {
            sign: Sign::Plus,
            exponent,
        }
    }

    /// `-q^exponent`
    pub fn neg_q(exponent: i64) -> Self {
        Monomial {
            sign: Sign::Minus,
            exponent,
        }
    }

    pub fn times(self, other: Monomial) -> Monomial {
        let sign = if self.sign == other.sign {
            Sign::Plus
        } else {
            Sign::Minus
        };
        Monomial {
            sign,
            exponent: self.exponent + other.exponent,
        }
    }

    /// Multiplies by `q^shift`.
    pub fn shifted(self, shift: i64) -> Monomial {
        Monomial {
            sign: self.sign,
            exponent: self.exponent + shift,
        }
    }

    pub fn pow(self, n: i64) -> Monomial {
        Monomial {
            sign: self.sign.pow(n),
            exponent: self.exponent * n,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Minus { "-" } else { "" };
        write!(f, "{s}q^{}", self.exponent)
    }
}
