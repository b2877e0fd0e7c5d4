//! Named example curves.

use crate::curve::{CurveSpec, Generator};
use crate::field::FieldSpec;

fn plane(x: &[&[(i64, u32)]], y: &[&[(i64, u32)]]) -> CurveSpec {
    CurveSpec::parametrization(
        FieldSpec::default(),
        vec![Generator::from_ints("x", x), Generator::from_ints("y", y)],
    )
}

/// `y² = x³`.
pub fn cusp() -> CurveSpec {
    plane(&[&[(1, 2)]], &[&[(1, 3)]])
}

/// `xy = 0`.
pub fn node() -> CurveSpec {
    plane(&[&[(1, 1)], &[]], &[&[], &[(1, 1)]])
}

/// Branches `(t, t²)` and `(t, -t²)`.
pub fn tacnode() -> CurveSpec {
    plane(&[&[(1, 1)], &[(1, 1)]], &[&[(1, 2)], &[(-1, 2)]])
}

/// Three lines `x = 0`, `y = 0`, `x + y = 0`.
pub fn triple_point() -> CurveSpec {
    plane(&[&[(1, 1)], &[], &[(1, 1)]], &[&[], &[(1, 1)], &[(-1, 1)]])
}

/// Four lines through the origin.
pub fn four_lines() -> CurveSpec {
    plane(
        &[&[(1, 1)], &[], &[(1, 1)], &[(1, 1)]],
        &[&[], &[(1, 1)], &[(-1, 1)], &[(2, 1)]],
    )
}

/// Cusp `(t², t³)` together with the line `y = 0`.
pub fn cusp_and_line() -> CurveSpec {
    plane(&[&[(1, 2)], &[(1, 1)]], &[&[(1, 3)], &[]])
}

/// Branch `(t⁴, t⁶ + t⁷)` with semigroup `⟨4, 6, 13⟩`.
pub fn e4613() -> CurveSpec {
    plane(&[&[(1, 4)]], &[&[(1, 6), (1, 7)]])
}

/// Space monomial curve `(t³, t⁴, t⁵)`, not Gorenstein.
pub fn monomial345() -> CurveSpec {
    CurveSpec::parametrization(
        FieldSpec::default(),
        vec![
            Generator::from_ints("x", &[&[(1, 3)]]),
            Generator::from_ints("y", &[&[(1, 4)]]),
            Generator::from_ints("z", &[&[(1, 5)]]),
        ],
    )
}

/// Smooth branch `(t, t²)`.
pub fn smooth() -> CurveSpec {
    plane(&[&[(1, 1)]], &[&[(1, 2)]])
}

pub fn all() -> Vec<(&'static str, CurveSpec)> {
    vec![
        ("cusp", cusp()),
        ("node", node()),
        ("tacnode", tacnode()),
        ("triple-point", triple_point()),
        ("four-lines", four_lines()),
        ("cusp-and-line", cusp_and_line()),
        ("e4613", e4613()),
        ("monomial345", monomial345()),
        ("smooth", smooth()),
    ]
}

pub fn by_name(name: &str) -> Option<CurveSpec> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}
