//! Display in the concrete syntax accepted by [`super::parse`].

use core::fmt;

use super::{AffineValuationConstraint, Atom, Factored, QfFormula};
use crate::field::{ElementText, FieldElement};

/// `x`, `x-a` or `x-(a)` for a centre `a`.
struct Lin<'a>(&'a FieldElement);

impl fmt::Display for Lin<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("x");
        }
        let text = alloc::format!("{}", ElementText(self.0));
        if text.contains(['+', '-']) {
            write!(f, "x-({text})")
        } else {
            write!(f, "x-{text}")
        }
    }
}

impl fmt::Display for AffineValuationConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bare = self.terms.len() == 1;
        if !bare {
            f.write_str("affine{")?;
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            match (i, *n < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let m = n.unsigned_abs();
            if m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "v({})", Lin(c))?;
        }
        write!(f, " {} {}", self.relation.as_str(), self.threshold)?;
        if !bare {
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (r, m)) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "({})", Lin(r))?;
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        let unit_is_one = matches!(&self.unit, FieldElement::Fun(x) if x.num().is_one() && x.den().is_one())
            || matches!(&self.unit, FieldElement::Rat(r) if *r == num_rational::BigRational::from_integer(1.into()));
        match (self.roots.is_empty(), unit_is_one) {
            (true, _) => write!(f, "({})", ElementText(&self.unit)),
            (false, true) => Ok(()),
            (false, false) => write!(f, "; c=({})", ElementText(&self.unit)),
        }
    }
}

impl fmt::Display for QfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QfFormula::Const(true) => f.write_str("true"),
            QfFormula::Const(false) => f.write_str("false"),
            QfFormula::Atom(Atom::Affine(c)) => c.fmt(f),
            QfFormula::Atom(Atom::Divides(d)) => write!(f, "div({} | {})", d.f, d.g),
            QfFormula::Atom(Atom::Equals(g)) => write!(f, "x = ({})", ElementText(g)),
            QfFormula::Not(g) => write!(f, "!({g})"),
            QfFormula::And(fs) | QfFormula::Or(fs) if fs.is_empty() => {
                f.write_str(if matches!(self, QfFormula::And(_)) { "true" } else { "false" })
            }
            QfFormula::And(fs) | QfFormula::Or(fs) => {
                let sep = if matches!(self, QfFormula::And(_)) { " & " } else { " | " };
                f.write_str("(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
        }
    }
}
