//! Per-claim tolerances. Bump [`TABLE_VERSION`] whenever a value changes.

pub const TABLE_VERSION: &str = "1";

/// Excess of |ab| over √2|a||b|.
pub const LEMMA1: f64 = 1e-12;
/// |F(t) − F(t')| for parameters 1e-3 apart.
pub const LEMMA2: f64 = 1e-2;
/// |Φ[1] − (I + 𝟙)| / (1 + |I|).
pub const LEMMA3: f64 = 5e-3;
/// |Φ₀[1] − 𝟙| for α = 0, where the identity is exact.
pub const LEMMA3_EXACT: f64 = 1e-10;
/// |I(t) − I(t')| for points 1e-4 apart.
pub const LEMMA4: f64 = 1e-2;
/// Plemelj residuals divided by 1 + |f(t)|.
pub const JUMP: f64 = 1e-2;
/// Relative deviation between pair and quaternionic assemblies.
pub const PAIR: f64 = 1e-12;
/// Membership defect of a vectorial density.
pub const MEMBERSHIP: f64 = 1e-10;
/// Finite-difference residual of Dirac-type operators on Φ-fields.
pub const HYPERHOLOMORPHY: f64 = 1e-3;
pub const SYSTEM: f64 = 1e-3;
/// |quaternionic operator − pair formula| on identical stencils.
pub const EQUIVALENCE: f64 = 1e-9;
pub const FACTORIZATION: f64 = 1e-3;
/// Admissible range of the observed finite-difference order.
pub const ORDER_RANGE: [f64; 2] = [1.6, 2.4];
