//! Distances induced by generators, midpoint tests and Fréchet means.

use crate::error::{Error, Result};
use crate::generators::Generator;
use crate::numeric::grid_golden_minimize;

/// Grid size seeding the numeric Fréchet minimisation.
pub const FRECHET_GRID: usize = 1024;
/// Final bracket width of the golden-section refinement.
pub const FRECHET_WIDTH: f64 = 1e-8;

/// The distance `|h(x) - h(y)|` of a generator `h`.
#[derive(Debug, Clone)]
pub struct GeneratorDistance {
    gen: Generator,
}

impl GeneratorDistance {
    pub fn new(gen: Generator) -> Self {
        Self { gen }
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn distance(&self, x: f64, y: f64) -> Result<f64> {
        Ok((self.gen.forward(x)? - self.gen.forward(y)?).abs())
    }

    /// A generator proportional to this one up to an additive constant, with
    /// values of order one on `[a, b]`. Ratios of distances are unchanged.
    fn scaled_for(&self, a: f64, b: f64) -> Generator {
        match self.gen.stable_form() {
            Some(form) => {
                let (wa, wb) = (
                    form.rate * form.chart.apply(a),
                    form.rate * form.chart.apply(b),
                );
                self.gen.rebased(if wa >= wb { a } else { b })
            }
            None => self.gen.clone(),
        }
    }
}

impl From<Generator> for GeneratorDistance {
    fn from(gen: Generator) -> Self {
        Self::new(gen)
    }
}

pub fn distance(d: &GeneratorDistance, x: f64, y: f64) -> Result<f64> {
    d.distance(x, y)
}

/// Whether `c` is a midpoint of `a < b`: `|d(a,c) - d(c,b)| <= tol * d(a,b)`.
///
/// The comparison is scale-free, so it is carried out on a rescaled copy of
/// the generator that cannot overflow at extreme parameters.
pub fn is_midpoint(d: &GeneratorDistance, a: f64, b: f64, c: f64, tol: f64) -> Result<bool> {
    if !(a < b) {
        return Err(Error::DegenerateInterval { a, b });
    }
    let dom = d.gen.domain();
    dom.check(a)?;
    dom.check(b)?;
    dom.check(c)?;
    if !(a < c && c < b) {
        return Ok(false);
    }
    let h = d.scaled_for(a, b);
    let (ha, hb, hc) = (h.forward(a)?, h.forward(b)?, h.forward(c)?);
    Ok(((ha - hc).abs() - (hc - hb).abs()).abs() <= tol * (ha - hb).abs())
}

/// The Fréchet mean of `{a, b}` under `d_h`, in closed form: `m_h(a, b)`.
pub fn frechet_mean_closed(gen: &Generator, a: f64, b: f64) -> Result<f64> {
    gen.mean(a, b)
}

/// Brute-force Fréchet mean: minimises `d²(a,x) + d²(x,b)` over `[a, b]` by
/// a 1024-point grid scan refined with golden-section search.
pub fn frechet_mean_numeric(d: &GeneratorDistance, a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::DegenerateInterval { a, b });
    }
    let h = d.scaled_for(a, b);
    let ha = h.forward(a)?;
    let hb = h.forward(b)?;
    let energy = |x: f64| -> Result<f64> {
        // the grid includes the closed ends, which the open domain check rejects
        let hx = if x == a {
            ha
        } else if x == b {
            hb
        } else {
            h.forward(x)?
        };
        Ok((ha - hx).powi(2) + (hx - hb).powi(2))
    };
    let (x, _) = grid_golden_minimize(energy, a, b, FRECHET_GRID, FRECHET_WIDTH)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dist(g: Generator) -> GeneratorDistance {
        GeneratorDistance::new(g)
    }

    #[test]
    fn distances() {
        assert_eq!(dist(Generator::power(1.0)).distance(1.0, 3.0).unwrap(), 2.0);
        assert_eq!(dist(Generator::power(2.0)).distance(1.0, 3.0).unwrap(), 8.0);
        assert_eq!(
            dist(Generator::exponential(3.0))
                .distance(0.4, 0.4)
                .unwrap(),
            0.0
        );
        assert!(dist(Generator::power(2.0)).distance(-1.0, 3.0).is_err());
    }

    #[test]
    fn midpoints() {
        let d1 = dist(Generator::power(1.0));
        assert!(is_midpoint(&d1, 1.0, 3.0, 2.0, 1e-12).unwrap());
        assert!(!is_midpoint(&d1, 1.0, 3.0, 2.5, 1e-12).unwrap());
        assert!(is_midpoint(&dist(Generator::power(0.0)), 1.0, 4.0, 2.0, 1e-12).unwrap());
        assert_eq!(
            is_midpoint(&d1, 3.0, 1.0, 2.0, 1e-12),
            Err(Error::DegenerateInterval { a: 3.0, b: 1.0 })
        );
        assert!(!is_midpoint(&d1, 1.0, 3.0, 5.0, 1e-12).unwrap());
    }

    #[test]
    fn midpoint_at_overflowing_parameter() {
        let g = Generator::exponential(5000.0);
        let c = g.mean(0.0, 1.0).unwrap();
        assert!(g.forward(1.0).unwrap().is_infinite());
        assert!(is_midpoint(&dist(g), 0.0, 1.0, c, 1e-10).unwrap());
    }

    #[test]
    fn closed_form_frechet_means() {
        assert_eq!(
            frechet_mean_closed(&Generator::power(1.0), 1.0, 3.0).unwrap(),
            2.0
        );
        // log((1 + e^2) / 2), mpmath
        let m = frechet_mean_closed(&Generator::exponential(1.0), 0.0, 2.0).unwrap();
        assert!((m - 1.433_780_830_483_027_2).abs() < 1e-14);
        let m = frechet_mean_closed(&Generator::radical(1.0).unwrap(), 2.0, 6.0).unwrap();
        assert!((m - 3.0).abs() < 1e-14);
    }

    #[test]
    fn numeric_frechet_means() {
        let m = frechet_mean_numeric(&dist(Generator::power(1.0)), 1.0, 3.0).unwrap();
        assert!((m - 2.0).abs() < 1e-6);
        let m = frechet_mean_numeric(&dist(Generator::power(0.0)), 1.0, 4.0).unwrap();
        assert!((m - 2.0).abs() < 1e-6);
        // (1/2) log((1 + e^2) / 2), mpmath
        let m = frechet_mean_numeric(&dist(Generator::exponential(2.0)), 0.0, 1.0).unwrap();
        assert!((m - 0.716_890_415_241_513_6).abs() < 1e-6);
        assert!(frechet_mean_numeric(&dist(Generator::power(1.0)), 2.0, 2.0).is_err());
    }

    fn family_instance() -> impl Strategy<Value = (Generator, f64, f64)> {
        prop_oneof![
            (-6.0f64..6.0, 0.1f64..30.0, 0.1f64..30.0).prop_map(|(p, a, b)| (
                Generator::power(p),
                a,
                b
            )),
            (-6.0f64..6.0, -4.0f64..4.0, -4.0f64..4.0).prop_map(|(r, a, b)| (
                Generator::exponential(r),
                a,
                b
            )),
            (-6.0f64..6.0, 0.2f64..10.0, 0.2f64..10.0).prop_map(|(t, a, b)| (
                Generator::radical_log(t),
                a,
                b
            )),
        ]
        .prop_filter("distinct", |(_, a, b)| (a - b).abs() > 1e-3)
        .prop_map(|(g, a, b)| (g, a.min(b), a.max(b)))
    }

    proptest! {
        #[test]
        fn closed_form_is_a_midpoint((g, a, b) in family_instance()) {
            let c = frechet_mean_closed(&g, a, b).unwrap();
            prop_assert!(is_midpoint(&dist(g), a, b, c, 1e-10).unwrap());
        }

        #[test]
        fn triangle_and_additivity((g, a, b) in family_instance(), s in 0.01f64..0.99, z in 0.1f64..30.0) {
            let d = dist(g);
            let x = a + s * (b - a);
            let (dab, dax, dxb) = (d.distance(a, b).unwrap(), d.distance(a, x).unwrap(), d.distance(x, b).unwrap());
            prop_assert!((dax + dxb - dab).abs() <= 1e-12 * dab);
            if d.generator().domain().contains(z) {
                let dz = d.distance(a, z).unwrap() + d.distance(z, b).unwrap();
                prop_assert!(dz >= dab * (1.0 - 1e-15));
            }
        }
    }
}
