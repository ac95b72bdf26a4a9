use num_integer::Integer;

use crate::group::AbelianInvariants;

/// `A ⊗_Z B` for finitely generated abelian groups: the sum of
/// `Z/gcd(d_i, e_j)` over all invariant-factor pairs, with `0` standing
/// for `Z`.
pub fn abelian_tensor_oracle(a: &AbelianInvariants, b: &AbelianInvariants) -> AbelianInvariants {
    let mut cyclic = Vec::new();
    for &d in a.factors() {
        for &e in b.factors() {
            cyclic.push(d.gcd(&e));
        }
    }
    AbelianInvariants::from_cyclic_factors(&cyclic).expect("gcds of invariant factors fit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(f: &[u64]) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_factors(f).unwrap()
    }

    #[test]
    fn cyclic_case() {
        assert_eq!(abelian_tensor_oracle(&inv(&[4]), &inv(&[6])).factors(), &[2]);
        assert!(abelian_tensor_oracle(&inv(&[2]), &inv(&[3])).is_trivial());
    }

    #[test]
    fn elementary_abelian_square() {
        let v = inv(&[2, 2]);
        assert_eq!(abelian_tensor_oracle(&v, &v).factors(), &[2, 2, 2, 2]);
    }

    #[test]
    fn free_factor() {
        assert_eq!(abelian_tensor_oracle(&inv(&[0]), &inv(&[5])).factors(), &[5]);
        assert_eq!(abelian_tensor_oracle(&inv(&[0]), &inv(&[0])).factors(), &[0]);
    }
}
