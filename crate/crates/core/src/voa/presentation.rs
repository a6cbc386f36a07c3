use serde::{Deserialize, Serialize};

use crate::arith::{Coeff, Param, RatFunc};

/// A vertex operator algebra strongly generated by one field.
///
/// Modes are written in the "physics" convention `u(m)`: `α(m)` for the
/// Heisenberg field and `L(m)` for the Virasoro field. The vertex-operator
/// index `u_j` (coefficient of `x^{-j-1}` in `Y(u,x)`) is
/// `u_j = u(j - gen_weight + 1)`; [`VoaPresentation::physics_of_vertex`]
/// and its inverse are the only places that shift appears.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VoaPresentation {
    /// `[α(m), α(p)] = m δ_{m+p,0}`, generator weight 1.
    Heisenberg,
    /// `[L(m), L(p)] = (m-p) L(m+p) + (m³-m)/12 δ_{m+p,0} c`, generator weight 2.
    Virasoro,
}

/// `[u(m), u(p)] = coeff · u(m+p) + central · id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub mode_coeff: Coeff,
    pub central: Coeff,
}

impl VoaPresentation {
    pub fn symbol(self) -> &'static str {
        match self {
            VoaPresentation::Heisenberg => "a",
            VoaPresentation::Virasoro => "L",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "a" => Some(VoaPresentation::Heisenberg),
            "L" => Some(VoaPresentation::Virasoro),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VoaPresentation::Heisenberg => "heisenberg",
            VoaPresentation::Virasoro => "virasoro",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "heisenberg" | "heis" => Some(VoaPresentation::Heisenberg),
            "virasoro" | "vir" => Some(VoaPresentation::Virasoro),
            _ => None,
        }
    }

    pub fn gen_weight(self) -> i64 {
        match self {
            VoaPresentation::Heisenberg => 1,
            VoaPresentation::Virasoro => 2,
        }
    }

    /// Smallest `t` with `u(m)𝟏 = 0` for all `m ≥ -t + 1`; equivalently the
    /// smallest `k` allowed in a PBW word `u(-k)…𝟏`.
    pub fn vacuum_annihilation(self) -> i64 {
        match self {
            VoaPresentation::Heisenberg => 1,
            VoaPresentation::Virasoro => 2,
        }
    }

    pub fn central_params(self) -> &'static [Param] {
        match self {
            VoaPresentation::Heisenberg => &[],
            VoaPresentation::Virasoro => &[Param::C],
        }
    }

    pub fn physics_of_vertex(self, j: i64) -> i64 {
        j - (self.gen_weight() - 1)
    }

    pub fn vertex_of_physics(self, m: i64) -> i64 {
        m + (self.gen_weight() - 1)
    }

    pub fn bracket(self, m: i64, p: i64) -> Bracket {
        match self {
            VoaPresentation::Heisenberg => Bracket {
                mode_coeff: RatFunc::zero(),
                central: if m + p == 0 { RatFunc::from_int(m) } else { RatFunc::zero() },
            },
            VoaPresentation::Virasoro => {
                let central = if m + p == 0 {
                    RatFunc::param(Param::C).scale(&crate::arith::ratio(m * m * m - m, 12))
                } else {
                    RatFunc::zero()
                };
                Bracket { mode_coeff: RatFunc::from_int(m - p), central }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_are_antisymmetric() {
        for pres in [VoaPresentation::Heisenberg, VoaPresentation::Virasoro] {
            for m in -6..=6 {
                for p in -6..=6 {
                    let a = pres.bracket(m, p);
                    let b = pres.bracket(p, m);
                    assert!((&a.mode_coeff + &b.mode_coeff).is_zero());
                    assert!((&a.central + &b.central).is_zero());
                }
            }
        }
    }

    #[test]
    fn mode_shift_round_trips() {
        let v = VoaPresentation::Virasoro;
        assert_eq!(v.physics_of_vertex(1), 0);
        assert_eq!(v.vertex_of_physics(-2), -1);
        let h = VoaPresentation::Heisenberg;
        assert_eq!(h.physics_of_vertex(-3), -3);
    }
}
