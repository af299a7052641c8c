use std::fmt;

use serde_json::{json, Value};

use super::StructureCounts;
use crate::error::{Error, Result};

/// An exact non-negative rational with a non-zero denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    /// `None` when the denominator is zero.
    pub fn new(num: u128, den: u128) -> Option<Ratio> {
        (den != 0).then_some(Ratio { num, den })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Decimal rendering rounded half-up to `places` digits, computed in
    /// integers.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = 10u128.pow(places);
        let scaled = match self.num.checked_mul(2 * scale) {
            Some(twice) => (twice + self.den) / (2 * self.den),
            // Fall back to a split computation when the product overflows.
            None => {
                let int = self.num / self.den;
                let rem = self.num % self.den;
                int * scale + (rem as f64 / self.den as f64 * scale as f64).round() as u128
            }
        };
        let int = scaled / scale;
        let frac = scaled % scale;
        if places == 0 {
            int.to_string()
        } else {
            format!("{int}.{frac:0width$}", width = places as usize)
        }
    }
}

/// A clustering coefficient, undefined when its denominator is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coefficient(pub Option<Ratio>);

impl Coefficient {
    pub fn value(&self) -> Option<f64> {
        self.0.map(|r| r.value())
    }

    pub fn is_defined(&self) -> bool {
        self.0.is_some()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(r) => f.write_str(&r.to_decimal(9)),
            None => f.write_str("none"),
        }
    }
}

fn coeff(factor: u128, closed: u128, open: u128) -> Coefficient {
    Coefficient(Ratio::new(factor * closed, open))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientSet {
    pub icc: Coefficient,
    pub tcc: Coefficient,
    pub ccc: Coefficient,
    pub ucc: Coefficient,
    pub mcc: Coefficient,
}

impl CoefficientSet {
    pub fn entries(&self) -> [(&'static str, Coefficient); 5] {
        [
            ("icc", self.icc),
            ("tcc", self.tcc),
            ("ccc", self.ccc),
            ("ucc", self.ucc),
            ("mcc", self.mcc),
        ]
    }
}

/// The five coefficients on the whole graph, and again with every structure
/// induced by the mutual graph removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientReport {
    pub full: CoefficientSet,
    pub without_mutual: CoefficientSet,
}

fn sub(a: u64, b: u128, what: &str) -> Result<u128> {
    (a as u128)
        .checked_sub(b)
        .ok_or_else(|| Error::Inconsistent(format!("negative adjusted {what}: {a} - {b}")))
}

/// Builds the coefficient report.
///
/// `full` must hold the directed counts of `g` with the undirected fields of
/// its projection; `mutual` the undirected counts of the mutual graph.
///
/// Removal of mutual structures: a mutual triangle induces 2 cyclic and 6
/// transitive triangles, a mutual connected triplet 2 open directed triples,
/// a mutual 4-cycle 2 K22s and a mutual 3-path 2 open K22s. Every mutual
/// triangle or triplet is also one in the projection.
pub fn coefficients(full: &StructureCounts, mutual: &StructureCounts) -> Result<CoefficientReport> {
    let f = full;
    let m = mutual;
    let whole = CoefficientSet {
        icc: coeff(4, f.k22 as u128, f.open_k22 as u128),
        tcc: coeff(1, f.transitive as u128, f.open_directed as u128),
        ccc: coeff(3, f.cyclic as u128, f.open_directed as u128),
        ucc: coeff(3, f.und_triangles as u128, f.connected_triplets as u128),
        mcc: coeff(3, m.und_triangles as u128, m.connected_triplets as u128),
    };

    let mt = m.und_triangles as u128;
    let mc = m.connected_triplets as u128;
    let k22 = sub(f.k22, 2 * m.und_k22 as u128, "K22 count")?;
    let open_k22 = sub(f.open_k22, 2 * m.open_und_k22 as u128, "open K22 count")?;
    let transitive = sub(f.transitive, 6 * mt, "transitive count")?;
    let cyclic = sub(f.cyclic, 2 * mt, "cyclic count")?;
    let open_directed = sub(f.open_directed, 2 * mc, "open directed count")?;
    let und_triangles = sub(f.und_triangles, mt, "undirected triangle count")?;
    let triplets = sub(f.connected_triplets, mc, "connected triplet count")?;
    let without_mutual = CoefficientSet {
        icc: coeff(4, k22, open_k22),
        tcc: coeff(1, transitive, open_directed),
        ccc: coeff(3, cyclic, open_directed),
        ucc: coeff(3, und_triangles, triplets),
        mcc: coeff(3, 0, 0),
    };
    Ok(CoefficientReport {
        full: whole,
        without_mutual,
    })
}

impl CoefficientReport {
    pub fn render_lines(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.full.entries() {
            s.push_str(&format!("{k} = {c}\n"));
        }
        for (k, c) in self.without_mutual.entries() {
            s.push_str(&format!("{k}_without_mutual = {c}\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        fn set(s: &CoefficientSet) -> Value {
            let mut map = serde_json::Map::new();
            for (k, c) in s.entries() {
                let v = match c.0 {
                    Some(r) => json!({
                        "numerator": r.num.to_string(),
                        "denominator": r.den.to_string(),
                        "decimal": r.to_decimal(9),
                    }),
                    None => json!("none"),
                };
                map.insert(k.to_string(), v);
            }
            Value::Object(map)
        }
        json!({ "full": set(&self.full), "without_mutual": set(&self.without_mutual) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering_rounds_half_up() {
        assert_eq!(Ratio::new(1, 3).unwrap().to_decimal(9), "0.333333333");
        assert_eq!(Ratio::new(2, 3).unwrap().to_decimal(9), "0.666666667");
        assert_eq!(Ratio::new(1, 1).unwrap().to_decimal(9), "1.000000000");
        assert_eq!(Ratio::new(1, 8).unwrap().to_decimal(2), "0.13");
        assert!(Ratio::new(1, 0).is_none());
    }

    #[test]
    fn undefined_renders_none() {
        assert_eq!(Coefficient(None).to_string(), "none");
    }

    #[test]
    fn negative_adjustment_is_an_error() {
        let full = StructureCounts::default();
        let mutual = StructureCounts { und_triangles: 1, connected_triplets: 3, ..Default::default() };
        assert!(matches!(coefficients(&full, &mutual), Err(Error::Inconsistent(_))));
    }
}
