//! Advisory check of the domain-qualification condition.
//!
//! Convergence of the splitting iterations rests on a strong-relative-
//! interior condition over the product of the domains. That condition has no
//! general finite test, but two structured sufficient cases are decidable
//! from the domain descriptors alone:
//!
//! * at most one potential has a non-full domain (the rest have interior
//!   everywhere), or
//! * the space is finite-dimensional and the caller asserts a point common
//!   to the relative interiors of all domains.
//!
//! Anything else reports `Unknown`. The report never blocks a run.

use crate::prox::DomainDescriptor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Qualification {
    Satisfied { reason: String },
    Unknown { condition: String },
}

pub fn qualification_advisory(
    domains: &[DomainDescriptor],
    asserted_common_ri_point: bool,
) -> Qualification {
    let non_full = domains
        .iter()
        .filter(|d| !matches!(d, DomainDescriptor::Full))
        .count();
    if non_full == 0 {
        return Qualification::Satisfied {
            reason: "all domains are the whole space".into(),
        };
    }
    if non_full == 1 {
        return Qualification::Satisfied {
            reason: "a single restricted domain meets the interiors of all others".into(),
        };
    }
    if asserted_common_ri_point {
        return Qualification::Satisfied {
            reason: "caller asserts a common relative-interior point (finite dimension)".into(),
        };
    }
    Qualification::Unknown {
        condition: "need a point in the intersection of the relative interiors of all domains"
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DomainDescriptor::*;

    #[test]
    fn all_full_is_satisfied() {
        let q = qualification_advisory(&[Full, Full, Full], false);
        assert!(matches!(q, Qualification::Satisfied { .. }));
    }

    #[test]
    fn one_bounded_rest_full_is_satisfied() {
        let q = qualification_advisory(&[BoundedConvex, Full, Full, Full], false);
        assert!(matches!(q, Qualification::Satisfied { .. }));
    }

    #[test]
    fn two_affine_without_assertion_is_unknown() {
        let q = qualification_advisory(&[Affine, Affine], false);
        assert!(matches!(q, Qualification::Unknown { .. }));
        let q = qualification_advisory(&[Affine, Affine], true);
        assert!(matches!(q, Qualification::Satisfied { .. }));
    }
}
