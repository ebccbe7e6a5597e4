//! Ordered node lists with multiplicities.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Minimum gap between two float nodes before they are treated as the same node.
pub const DEFAULT_SEPARATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Node<S> {
    pub value: S,
    pub multiplicity: usize,
}

impl<S> Node<S> {
    pub fn new(value: S, multiplicity: usize) -> Self {
        Self {
            value,
            multiplicity,
        }
    }

    pub fn simple(value: S) -> Self {
        Self::new(value, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Simple,
    Confluent,
}

/// Validated, caller-ordered list of distinct nodes. Order is never changed.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<S> {
    nodes: Vec<Node<S>>,
    size: usize,
}

impl<S: Scalar> Spectrum<S> {
    pub fn new(nodes: Vec<Node<S>>) -> Result<Self> {
        Self::with_separation(nodes, DEFAULT_SEPARATION_TOL)
    }

    /// Validates `nodes`, treating float values closer than `separation_tol` as duplicates.
    pub fn with_separation(nodes: Vec<Node<S>>, separation_tol: f64) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        for (index, node) in nodes.iter().enumerate() {
            if node.multiplicity == 0 {
                return Err(Error::NonpositiveMultiplicity { index });
            }
        }
        for first in 0..nodes.len() {
            for second in first + 1..nodes.len() {
                if !nodes[first]
                    .value
                    .separated_from(&nodes[second].value, separation_tol)
                {
                    return Err(Error::DuplicateNode { first, second });
                }
            }
        }
        let size = nodes.iter().map(|n| n.multiplicity).sum();
        Ok(Self { nodes, size })
    }

    /// Distinct nodes, each with multiplicity one.
    pub fn simple(values: Vec<S>) -> Result<Self> {
        Self::new(values.into_iter().map(Node::simple).collect())
    }

    pub fn nodes(&self) -> &[Node<S>] {
        &self.nodes
    }

    /// Matrix order: the sum of multiplicities.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> SpectrumKind {
        if self.nodes.iter().all(|n| n.multiplicity == 1) {
            SpectrumKind::Simple
        } else {
            SpectrumKind::Confluent
        }
    }

    pub fn is_simple(&self) -> bool {
        self.kind() == SpectrumKind::Simple
    }

    pub fn is_confluent(&self) -> bool {
        !self.is_simple()
    }

    /// Node values repeated by multiplicity, in block order.
    pub fn expanded_values(&self) -> Vec<S> {
        self.nodes
            .iter()
            .flat_map(|n| core::iter::repeat_n(n.value.clone(), n.multiplicity))
            .collect()
    }

    /// For each column of the (confluent) matrix: the owning node and derivative order.
    pub fn column_layout(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .enumerate()
            .flat_map(|(idx, n)| (0..n.multiplicity).map(move |order| (idx, order)))
            .collect()
    }

    /// Number of nodes with multiplicity above one.
    pub fn repeated_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.multiplicity > 1).count()
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Result<Spectrum<T>> {
        Spectrum::new(
            self.nodes
                .iter()
                .map(|n| Node::new(f(&n.value), n.multiplicity))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn simple_and_confluent_classification() {
        let s = Spectrum::new(vec![Node::new(q(1), 1), Node::new(q(2), 1), Node::new(q(3), 1)])
            .unwrap();
        assert_eq!(s.kind(), SpectrumKind::Simple);
        assert_eq!(s.size(), 3);

        let c = Spectrum::new(vec![Node::new(q(1), 2), Node::new(q(2), 1)]).unwrap();
        assert_eq!(c.kind(), SpectrumKind::Confluent);
        assert_eq!(c.size(), 3);
        assert_eq!(c.expanded_values(), vec![q(1), q(1), q(2)]);
        assert_eq!(c.column_layout(), vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn duplicates_must_be_multiplicities() {
        let err = Spectrum::new(vec![Node::new(q(1), 1), Node::new(q(1), 1)]).unwrap_err();
        assert_eq!(err, Error::DuplicateNode { first: 0, second: 1 });
    }

    #[test]
    fn near_duplicate_floats_are_rejected() {
        let err = Spectrum::simple(vec![1.0, 1.0 + 1e-12]).unwrap_err();
        assert!(matches!(err, Error::DuplicateNode { .. }));
        assert!(Spectrum::with_separation(vec![Node::simple(1.0), Node::simple(1.0 + 1e-12)], 1e-14)
            .is_ok());
    }

    #[test]
    fn zero_multiplicity_and_empty_rejected() {
        assert_eq!(
            Spectrum::new(vec![Node::new(q(1), 0)]).unwrap_err(),
            Error::NonpositiveMultiplicity { index: 0 }
        );
        assert_eq!(
            Spectrum::<Rational>::new(vec![]).unwrap_err(),
            Error::EmptySpectrum
        );
    }

    #[test]
    fn caller_order_is_preserved() {
        let s = Spectrum::simple(vec![q(3), q(-1), q(2)]).unwrap();
        let values: Vec<_> = s.nodes().iter().map(|n| n.value.clone()).collect();
        assert_eq!(values, vec![q(3), q(-1), q(2)]);
    }
}
