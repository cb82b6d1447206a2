use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::{JetError, TruncatedSeries};
use crate::algebra::{format_rational, int, Rational};

/// Ambient dimension plus the coordinates along which the divisor lies.
///
/// Indices are 0-based positions into the coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetFrame {
    n: usize,
    log_indices: BTreeSet<usize>,
}

impl JetFrame {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, log_indices: I) -> Result<Self, JetError> {
        let log_indices: BTreeSet<usize> = log_indices.into_iter().collect();
        if let Some(&index) = log_indices.iter().find(|&&i| i >= n) {
            return Err(JetError::InvalidFrame { index, n });
        }
        Ok(JetFrame { n, log_indices })
    }

    /// Frame with no logarithmic coordinates.
    pub fn standard(n: usize) -> Self {
        JetFrame {
            n,
            log_indices: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_log(&self, j: usize) -> bool {
        self.log_indices.contains(&j)
    }

    pub fn log_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.log_indices.iter().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JetStyle {
    Logarithmic,
    Standard,
}

/// Order-3 jet data `ξ_j^(i)` at a basepoint, `values[j][i-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCoordinates {
    pub frame: JetFrame,
    pub basepoint: Vec<Rational>,
    pub values: Vec<[Rational; 3]>,
    pub style: JetStyle,
}

impl JetCoordinates {
    pub fn new(
        frame: JetFrame,
        basepoint: Vec<Rational>,
        values: Vec<[Rational; 3]>,
        style: JetStyle,
    ) -> Result<Self, JetError> {
        for len in [basepoint.len(), values.len()] {
            if len != frame.n {
                return Err(JetError::DimensionMismatch {
                    expected: frame.n,
                    got: len,
                });
            }
        }
        Ok(JetCoordinates {
            frame,
            basepoint,
            values,
            style,
        })
    }

    fn check_basepoint(&self) -> Result<(), JetError> {
        match self.frame.log_indices().find(|&j| self.basepoint[j].is_zero()) {
            Some(coordinate) => Err(JetError::PoleAtBasepoint { coordinate }),
            None => Ok(()),
        }
    }
}

impl Serialize for JetCoordinates {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            frame: &'a JetFrame,
            style: JetStyle,
            basepoint: Vec<String>,
            values: Vec<Vec<String>>,
        }
        Wire {
            frame: &self.frame,
            style: self.style,
            basepoint: self.basepoint.iter().map(format_rational).collect(),
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

/// A 1-form pulled back along a germ: `dz_j` or `dz_j/z_j` (0-based `j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Dz(usize),
    DzOverZ(usize),
}

/// `(Z(0), Z'(0), Z''(0))` where `f*ω = Z(t) dt`.
pub fn pullback_form_derivatives(
    germ: &[TruncatedSeries],
    form: Form,
) -> Result<[Rational; 3], JetError> {
    let j = match form {
        Form::Dz(j) | Form::DzOverZ(j) => j,
    };
    let component = germ.get(j).ok_or(JetError::DimensionMismatch {
        expected: j + 1,
        got: germ.len(),
    })?;
    let dz = component.derivative();
    let z = match form {
        Form::Dz(_) => dz,
        Form::DzOverZ(_) => dz
            .div(component)
            .map_err(|_| JetError::PoleAtBasepoint { coordinate: j })?,
    };
    Ok([z.derivative_at_zero(0), z.derivative_at_zero(1), z.derivative_at_zero(2)])
}

/// Jet of a germ in `frame`: logarithmic forms on log coordinates, `dz` elsewhere.
pub fn jet_of_germ(
    germ: &[TruncatedSeries],
    frame: &JetFrame,
    style: JetStyle,
) -> Result<JetCoordinates, JetError> {
    if germ.len() != frame.n {
        return Err(JetError::DimensionMismatch {
            expected: frame.n,
            got: germ.len(),
        });
    }
    let values = (0..frame.n)
        .map(|j| {
            let form = if style == JetStyle::Logarithmic && frame.is_log(j) {
                Form::DzOverZ(j)
            } else {
                Form::Dz(j)
            };
            pullback_form_derivatives(germ, form)
        })
        .collect::<Result<Vec<_>, _>>()?;
    JetCoordinates::new(
        frame.clone(),
        germ.iter().map(|s| s.c[0].clone()).collect(),
        values,
        style,
    )
}

/// `ξ̂ = z·ξ`, `z(ξ'' + ξ'^2)`, `z(ξ''' + 3ξ'ξ'' + ξ'^3)` on logarithmic coordinates.
pub fn log_to_std(jet: &JetCoordinates) -> Result<JetCoordinates, JetError> {
    if jet.style != JetStyle::Logarithmic {
        return Err(JetError::WrongStyle {
            expected: "logarithmic",
        });
    }
    jet.check_basepoint()?;
    let mut out = jet.clone();
    out.style = JetStyle::Standard;
    for j in jet.frame.log_indices() {
        let z = &jet.basepoint[j];
        let [x1, x2, x3] = &jet.values[j];
        let x1sq = x1 * x1;
        out.values[j] = [
            z * x1,
            z * (x2 + &x1sq),
            z * (x3 + int(3) * x1 * x2 + &x1sq * x1),
        ];
    }
    Ok(out)
}

/// Inverse of [`log_to_std`].
pub fn std_to_log(jet: &JetCoordinates) -> Result<JetCoordinates, JetError> {
    if jet.style != JetStyle::Standard {
        return Err(JetError::WrongStyle { expected: "standard" });
    }
    jet.check_basepoint()?;
    let mut out = jet.clone();
    out.style = JetStyle::Logarithmic;
    for j in jet.frame.log_indices() {
        let z = &jet.basepoint[j];
        let [h1, h2, h3] = &jet.values[j];
        let x1 = h1 / z;
        let x1sq = &x1 * &x1;
        let x2 = h2 / z - &x1sq;
        let x3 = h3 / z - int(3) * &x1 * &x2 - &x1sq * &x1;
        out.values[j] = [x1, x2, x3];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn series(c: &[Rational]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c)
    }

    fn single(z: i64, xi: [i64; 3], style: JetStyle) -> JetCoordinates {
        JetCoordinates::new(
            JetFrame::new(1, [0]).unwrap(),
            vec![int(z)],
            vec![xi.map(int)],
            style,
        )
        .unwrap()
    }

    #[test]
    fn pullback_examples() {
        let affine = [series(&[int(1), int(1)])];
        assert_eq!(pullback_form_derivatives(&affine, Form::Dz(0)).unwrap(), [int(1), int(0), int(0)]);

        let exp = [series(&[int(1), int(1), rat(1, 2), rat(1, 6), rat(1, 24)])];
        assert_eq!(
            pullback_form_derivatives(&exp, Form::DzOverZ(0)).unwrap(),
            [int(1), int(0), int(0)]
        );

        let square = [series(&[int(1), int(2), int(1)])];
        assert_eq!(
            pullback_form_derivatives(&square, Form::DzOverZ(0)).unwrap(),
            [int(2), int(-2), int(4)]
        );

        let pole = [series(&[int(0), int(1)])];
        assert_eq!(
            pullback_form_derivatives(&pole, Form::DzOverZ(0)),
            Err(JetError::PoleAtBasepoint { coordinate: 0 })
        );
    }

    #[test]
    fn log_to_std_examples() {
        let zero = log_to_std(&single(5, [0, 0, 0], JetStyle::Logarithmic)).unwrap();
        assert_eq!(zero.values[0], [0, 0, 0].map(int));
        let a = log_to_std(&single(2, [3, 0, 0], JetStyle::Logarithmic)).unwrap();
        assert_eq!(a.values[0], [6, 18, 54].map(int));
        let b = log_to_std(&single(1, [1, 1, 1], JetStyle::Logarithmic)).unwrap();
        assert_eq!(b.values[0], [1, 2, 5].map(int));
    }

    #[test]
    fn std_to_log_examples() {
        let a = std_to_log(&single(2, [6, 18, 54], JetStyle::Standard)).unwrap();
        assert_eq!(a.values[0], [3, 0, 0].map(int));
        let z = std_to_log(&single(7, [0, 0, 0], JetStyle::Standard)).unwrap();
        assert_eq!(z.values[0], [0, 0, 0].map(int));
        assert_eq!(
            std_to_log(&single(0, [1, 0, 0], JetStyle::Standard)),
            Err(JetError::PoleAtBasepoint { coordinate: 0 })
        );
    }

    #[test]
    fn scaled_exponential_germ_matches_formula() {
        // z(t) = 2 exp(3t), truncated
        let germ = [series(&[int(2), int(6), int(9), int(9), rat(27, 4)])];
        let frame = JetFrame::new(1, [0]).unwrap();
        let log = jet_of_germ(&germ, &frame, JetStyle::Logarithmic).unwrap();
        assert_eq!(log.values[0], [3, 0, 0].map(int));
        let std = jet_of_germ(&germ, &frame, JetStyle::Standard).unwrap();
        assert_eq!(std.values[0], [6, 18, 54].map(int));
        assert_eq!(log_to_std(&log).unwrap(), std);
    }

    #[test]
    fn non_log_coordinates_pass_through() {
        let jet = JetCoordinates::new(
            JetFrame::new(2, [1]).unwrap(),
            vec![int(0), int(3)],
            vec![[4, 5, 6].map(int), [1, 0, 0].map(int)],
            JetStyle::Logarithmic,
        )
        .unwrap();
        let std = log_to_std(&jet).unwrap();
        assert_eq!(std.values[0], jet.values[0]);
        assert_eq!(std.values[1], [3, 3, 3].map(int));
    }

    #[test]
    fn serializes_as_rational_strings() {
        let json = serde_json::to_value(single(2, [3, 0, 0], JetStyle::Logarithmic)).unwrap();
        assert_eq!(json["values"][0][0], "3");
        assert_eq!(json["style"], "logarithmic");
    }

    #[test]
    fn invalid_frame() {
        assert_eq!(JetFrame::new(2, [2]), Err(JetError::InvalidFrame { index: 2, n: 2 }));
    }
}
