use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::berk::BerkPoint;
use crate::valfield::format_rational;

/// A finite signed atomic measure. Zero atoms are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Measure {
    atoms: BTreeMap<BerkPoint, BigRational>,
}

impl Measure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dirac(x: BerkPoint) -> Self {
        Self::from_atoms([(x, BigRational::one())])
    }

    /// Sums weights of repeated points.
    pub fn from_atoms<I: IntoIterator<Item = (BerkPoint, BigRational)>>(atoms: I) -> Self {
        let mut m = Self::new();
        for (x, w) in atoms {
            m.add_atom(x, w);
        }
        m
    }

    pub fn add_atom(&mut self, x: BerkPoint, w: BigRational) {
        let entry = self.atoms.entry(x).or_insert_with(BigRational::zero);
        *entry += w;
        if entry.is_zero() {
            self.atoms.retain(|_, w| !w.is_zero());
        }
    }

    pub fn mass_at(&self, x: &BerkPoint) -> BigRational {
        self.atoms.get(x).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&BerkPoint, &BigRational)> {
        self.atoms.iter()
    }

    pub fn support(&self) -> Vec<BerkPoint> {
        self.atoms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> BigRational {
        self.atoms.values().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.values().all(|w| w.is_positive())
    }

    pub fn is_probability(&self) -> bool {
        self.is_positive() && self.total_mass().is_one()
    }

    pub fn scale(&self, c: &BigRational) -> Measure {
        Self::from_atoms(self.atoms.iter().map(|(x, w)| (x.clone(), w * c)))
    }

    pub fn add(&self, other: &Measure) -> Measure {
        let mut out = self.clone();
        for (x, w) in &other.atoms {
            out.add_atom(x.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Measure) -> Measure {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Divides by the total mass; `None` when the mass is zero.
    pub fn normalized(&self) -> Option<Measure> {
        let m = self.total_mass();
        (!m.is_zero()).then(|| self.scale(&m.recip()))
    }

    /// Pushes every atom forward along `f`, merging collisions.
    pub fn map_points<F: Fn(&BerkPoint) -> BerkPoint>(&self, f: F) -> Measure {
        Self::from_atoms(self.atoms.iter().map(|(x, w)| (f(x), w.clone())))
    }

    /// Atoms other than the one at infinity.
    pub fn finite_part(&self) -> Measure {
        Self::from_atoms(
            self.atoms
                .iter()
                .filter(|(x, _)| !x.is_infinity())
                .map(|(x, w)| (x.clone(), w.clone())),
        )
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(x, w)| format!("{}·δ[{}]", format_rational(w), x))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{int, rat, FieldCtx};

    #[test]
    fn atoms_merge_and_cancel() {
        let k = FieldCtx::new(3).unwrap();
        let g = BerkPoint::gauss(k);
        let mut m = Measure::dirac(g.clone());
        m.add_atom(BerkPoint::Infinity, rat(1, 2));
        assert_eq!(m.total_mass(), rat(3, 2));
        assert!(m.is_positive());
        m.add_atom(g.clone(), int(-1));
        assert_eq!(m.support(), vec![BerkPoint::Infinity]);
        assert!(m.sub(&m).is_empty());
        assert_eq!(m.normalized().unwrap(), Measure::dirac(BerkPoint::Infinity));
    }
}
