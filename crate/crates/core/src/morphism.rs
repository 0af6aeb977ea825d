//! Morphisms of windings as triples `(U, D, c)` and the induced morphisms of
//! F1-representations.
//!
//! `U` must be arrow-preimage-closed in the domain (a path ending in `U`
//! starts in `U`), so its complement is a subrepresentation: the kernel.
//! `D` must be arrow-image-closed in the codomain: the image.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::quiver::Winding;
use crate::rep::{rep_from_winding, F1Rep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindingMorphism {
    pub domain: Winding,
    pub codomain: Winding,
    pub up: BTreeSet<usize>,
    pub down: BTreeSet<usize>,
    pub iso: BTreeMap<usize, usize>,
}

impl WindingMorphism {
    pub fn identity(w: &Winding) -> WindingMorphism {
        let all: BTreeSet<usize> = (0..w.gamma().n_vertices()).collect();
        WindingMorphism {
            domain: w.clone(),
            codomain: w.clone(),
            iso: all.iter().map(|&v| (v, v)).collect(),
            up: all.clone(),
            down: all,
        }
    }

    /// Builds a morphism from vertex ids and validates it.
    pub fn from_ids(
        domain: Winding,
        codomain: Winding,
        pairs: &[(&str, &str)],
    ) -> Result<WindingMorphism> {
        let mut iso = BTreeMap::new();
        for (x, y) in pairs {
            let xi = domain
                .gamma()
                .vertex_index(x)
                .ok_or_else(|| Error::BadParameters(format!("unknown vertex `{x}`")))?;
            let yi = codomain
                .gamma()
                .vertex_index(y)
                .ok_or_else(|| Error::BadParameters(format!("unknown vertex `{y}`")))?;
            iso.insert(xi, yi);
        }
        let m = WindingMorphism {
            up: iso.keys().copied().collect(),
            down: iso.values().copied().collect(),
            domain,
            codomain,
            iso,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.domain.base() != self.codomain.base() {
            return Err(Error::CodomainMismatch);
        }
        for (s, t, _) in self.domain.colored_arrows() {
            if self.up.contains(&t) && !self.up.contains(&s) {
                return Err(Error::ClosureViolation(format!(
                    "U contains `{}` but not its predecessor `{}`",
                    self.domain.gamma().vertex(t),
                    self.domain.gamma().vertex(s)
                )));
            }
        }
        for (s, t, _) in self.codomain.colored_arrows() {
            if self.down.contains(&s) && !self.down.contains(&t) {
                return Err(Error::ClosureViolation(format!(
                    "D contains `{}` but not its successor `{}`",
                    self.codomain.gamma().vertex(s),
                    self.codomain.gamma().vertex(t)
                )));
            }
        }
        let keys: BTreeSet<usize> = self.iso.keys().copied().collect();
        let values: BTreeSet<usize> = self.iso.values().copied().collect();
        if keys != self.up || values != self.down || values.len() != keys.len() {
            return Err(Error::TriangleViolation(
                "c is not a bijection from U onto D".into(),
            ));
        }
        for (&x, &y) in &self.iso {
            if self.domain.vmap()[x] != self.codomain.vmap()[y] {
                return Err(Error::TriangleViolation(format!(
                    "`{}` and `{}` lie over different vertices",
                    self.domain.gamma().vertex(x),
                    self.codomain.gamma().vertex(y)
                )));
            }
        }
        let mapped: BTreeSet<(usize, usize, usize)> = self
            .domain
            .colored_arrows()
            .into_iter()
            .filter(|(s, t, _)| self.up.contains(s) && self.up.contains(t))
            .map(|(s, t, c)| (self.iso[&s], self.iso[&t], c))
            .collect();
        let target: BTreeSet<(usize, usize, usize)> = self
            .codomain
            .colored_arrows()
            .into_iter()
            .filter(|(s, t, _)| self.down.contains(s) && self.down.contains(t))
            .collect();
        if mapped != target {
            return Err(Error::TriangleViolation(
                "c is not an isomorphism of the full subquivers over Q".into(),
            ));
        }
        Ok(())
    }

    /// `self ∘ phi`.
    pub fn compose(&self, phi: &WindingMorphism) -> Result<WindingMorphism> {
        if phi.codomain != self.domain {
            return Err(Error::CodomainMismatch);
        }
        let meet: BTreeSet<usize> = self.up.intersection(&phi.down).copied().collect();
        let iso: BTreeMap<usize, usize> = phi
            .iso
            .iter()
            .filter(|(_, y)| meet.contains(y))
            .map(|(&x, y)| (x, self.iso[y]))
            .collect();
        Ok(WindingMorphism {
            domain: phi.domain.clone(),
            codomain: self.codomain.clone(),
            up: iso.keys().copied().collect(),
            down: iso.values().copied().collect(),
            iso,
        })
    }

    /// The induced morphism of representations: `x ↦ c(x)` on `U`, zero off it.
    pub fn pushforward(&self) -> Result<RepMorphism> {
        self.validate()?;
        let source = rep_from_winding(&self.domain)?;
        let target = rep_from_winding(&self.codomain)?;
        let map = (0..source.total_dim())
            .map(|x| self.iso.get(&x).copied())
            .collect();
        Ok(RepMorphism {
            source,
            target,
            map,
        })
    }
}

/// A morphism of F1-representations: per element, its image or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: F1Rep,
    pub target: F1Rep,
    pub map: Vec<Option<usize>>,
}

impl RepMorphism {
    /// Checks `φ ∘ f_α = f'_α ∘ φ` for all arrows, and F1-linearity.
    pub fn commutes(&self) -> bool {
        let mut seen = BTreeSet::new();
        for y in self.map.iter().flatten() {
            if !seen.insert(*y) {
                return false;
            }
        }
        for x in 0..self.source.total_dim() {
            if let Some(y) = self.map[x] {
                if self.source.colors()[x] != self.target.colors()[y] {
                    return false;
                }
            }
        }
        let n_arrows = self.source.base().n_arrows();
        for a in 0..n_arrows {
            for x in 0..self.source.total_dim() {
                let left = self.source.apply(a, x).and_then(|y| self.map[y]);
                let right = self.map[x].and_then(|y| self.target.apply(a, y));
                if left != right {
                    return false;
                }
            }
        }
        true
    }

    pub fn kernel(&self) -> BTreeSet<usize> {
        (0..self.map.len()).filter(|&x| self.map[x].is_none()).collect()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().flatten().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::rep::winding_from_rep;
    use std::sync::Arc;

    fn string2() -> Winding {
        // x -a1-> y over L_1
        let l1 = Arc::new(named::loops(1));
        let b = [("v".to_string(), vec!["x", "y"])].into();
        let m = [("a1".to_string(), vec![("x", "y")])].into();
        winding_from_rep(&F1Rep::new(l1, &b, &m).unwrap())
    }

    #[test]
    fn identity_valid_and_neutral() {
        let w = string2();
        let id = WindingMorphism::identity(&w);
        id.validate().unwrap();
        let phi = WindingMorphism::from_ids(w.clone(), w.clone(), &[("x", "y")]).unwrap();
        assert_eq!(id.compose(&phi).unwrap(), phi);
        assert_eq!(phi.compose(&id).unwrap(), phi);
        let push = id.pushforward().unwrap();
        assert!(push.commutes());
        assert_eq!(push.map, vec![Some(0), Some(1)]);
    }

    #[test]
    fn closure_violation() {
        let w = string2();
        // U = {y} misses the predecessor x
        let err = WindingMorphism::from_ids(w.clone(), w, &[("y", "y")]).unwrap_err();
        assert!(matches!(err, Error::ClosureViolation(_)));
    }

    #[test]
    fn composition_by_hand() {
        // φ: x ↦ y (kills y, image {y}); ψ = φ. ψ∘φ: U_ψ ∩ D_φ = {x} ∩ {y} = ∅
        let w = string2();
        let phi = WindingMorphism::from_ids(w.clone(), w.clone(), &[("x", "y")]).unwrap();
        let zero = phi.compose(&phi).unwrap();
        assert!(zero.up.is_empty() && zero.down.is_empty());
        zero.validate().unwrap();
        let push = phi.pushforward().unwrap();
        assert!(push.commutes());
        assert_eq!(push.kernel(), BTreeSet::from([1]));
        assert_eq!(push.image(), BTreeSet::from([1]));
    }
}
