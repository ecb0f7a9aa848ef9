use std::fmt;

/// A rational literal `num/den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit {
    pub num: i64,
    pub den: i64,
}

impl Lit {
    pub const ONE: Lit = Lit { num: 1, den: 1 };

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub(crate) fn mul(self, other: Lit) -> Option<Lit> {
        Some(Lit {
            num: self.num.checked_mul(other.num)?,
            den: self.den.checked_mul(other.den)?,
        })
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coaction {
    /// `m<0>⊗m<1>`.
    Rho,
    /// `m[0]⊗m[1]`.
    Lam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    S,
    S2,
    Sinv,
    Eps,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::S => "S",
            Func::S2 => "S2",
            Func::Sinv => "Sinv",
            Func::Eps => "eps",
        }
    }

    pub(crate) fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "S" => Func::S,
            "S2" => Func::S2,
            "Sinv" => Func::Sinv,
            "eps" => Func::Eps,
            _ => return None,
        })
    }
}

/// One of `X, Y, Z` (components of `Φ`) or `P, Q, R` (of `Φ⁻¹`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiComp {
    pub inverse: bool,
    pub slot: usize,
}

impl PhiComp {
    pub fn letter(self) -> char {
        let letters = if self.inverse {
            ['P', 'Q', 'R']
        } else {
            ['X', 'Y', 'Z']
        };
        letters[self.slot]
    }

    pub(crate) fn from_letter(s: &str) -> Option<PhiComp> {
        let (inverse, slot) = match s {
            "X" => (false, 0),
            "Y" => (false, 1),
            "Z" => (false, 2),
            "P" => (true, 0),
            "Q" => (true, 1),
            "R" => (true, 2),
            _ => return None,
        };
        Some(PhiComp { inverse, slot })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// A declared variable, optionally with a coproduct path such as `21`.
    Var {
        name: String,
        path: Option<String>,
    },
    Phi {
        comp: PhiComp,
        label: String,
        path: Option<String>,
    },
    Alpha,
    Beta,
    Apply {
        func: Func,
        arg: Box<Factor>,
    },
    /// A parenthesized product, used as one element with optional path.
    Group {
        body: Box<Factor>,
        path: Option<String>,
    },
    /// Leg 0 or 1 of a coaction applied to `base` (a module-valued atom).
    Leg {
        base: Box<Atom>,
        kind: Coaction,
        leg: u8,
        label: String,
        path: Option<String>,
    },
}

/// A product of atoms with a scalar coefficient; empty means the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub coeff: Lit,
    pub atoms: Vec<Atom>,
}

/// A tensor product of factors with a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

fn write_path(f: &mut fmt::Formatter<'_>, path: &Option<String>) -> fmt::Result {
    match path {
        Some(p) => write!(f, "^{{{p}}}"),
        None => Ok(()),
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var { name, path } => {
                write!(f, "{name}")?;
                write_path(f, path)
            }
            Atom::Phi { comp, label, path } => {
                write!(f, "{}", comp.letter())?;
                if !label.is_empty() {
                    write!(f, "_{label}")?;
                }
                write_path(f, path)
            }
            Atom::Alpha => write!(f, "alpha"),
            Atom::Beta => write!(f, "beta"),
            Atom::Apply { func, arg } => write!(f, "{}({arg})", func.name()),
            Atom::Group { body, path } => {
                write!(f, "({body})")?;
                write_path(f, path)
            }
            Atom::Leg {
                base,
                kind,
                leg,
                label,
                path,
            } => {
                write!(f, "{base}")?;
                let (open, close) = match kind {
                    Coaction::Rho => ('<', '>'),
                    Coaction::Lam => ('[', ']'),
                };
                if label.is_empty() {
                    write!(f, "{open}{leg}{close}")?;
                } else {
                    write!(f, "{open}{leg};{label}{close}")?;
                }
                write_path(f, path)
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        if !self.coeff.is_one() {
            write!(f, "{} ", self.coeff)?;
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " (x) ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negative) {
                (0, false) => {}
                (0, true) => write!(f, "- ")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
