//! Text serialization of Fourier functions: a small header (period, offset,
//! band metadata, lineage) followed by one `k re im` line per mode.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signals::FourierFunction1D;

/// Render to the documented text format.
pub fn write_fourier(f: &FourierFunction1D) -> String {
    let (band_inf, band_sup) = f.band();
    let mut out = String::new();
    out.push_str("# fourier-function v1\n");
    out.push_str(&format!("period {}\n", f.period()));
    out.push_str(&format!("offset {}\n", f.offset()));
    out.push_str(&format!("band_inf {band_inf}\n"));
    out.push_str(&format!("band_sup {band_sup}\n"));
    if !f.lineage.is_empty() {
        out.push_str(&format!("lineage {}\n", f.lineage));
    }
    out.push_str(&format!("modes {}\n", f.mode_count()));
    for &(k, c) in f.modes() {
        out.push_str(&format!("{k} {} {}\n", c.re, c.im));
    }
    out
}

/// Parse the text format back into a function.
pub fn parse_fourier(text: &str) -> Result<FourierFunction1D> {
    let mut period = None;
    let mut offset = None;
    let mut lineage = String::new();
    let mut expected_modes: Option<usize> = None;
    let mut modes = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Config(format!("line {}: {msg}: '{raw}'", lineno + 1));
        if expected_modes.is_some() && modes.len() < expected_modes.unwrap() {
            let mut parts = line.split_whitespace();
            let k: i64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad mode index"))?;
            let re: f64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad real part"))?;
            let im: f64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad imaginary part"))?;
            modes.push((k, Complex64::new(re, im)));
            continue;
        }
        let (key, value) = line.split_once(' ').ok_or_else(|| err("expected 'key value'"))?;
        match key {
            "period" => period = Some(value.parse().map_err(|_| err("bad period"))?),
            "offset" => offset = Some(value.parse().map_err(|_| err("bad offset"))?),
            "band_inf" | "band_sup" => {} // derivable metadata, ignored on read
            "lineage" => lineage = value.to_string(),
            "modes" => expected_modes = Some(value.parse().map_err(|_| err("bad mode count"))?),
            _ => return Err(err("unknown header key")),
        }
    }
    let period = period.ok_or_else(|| Error::Config("missing 'period' header".into()))?;
    let offset = offset.ok_or_else(|| Error::Config("missing 'offset' header".into()))?;
    let expected = expected_modes.ok_or_else(|| Error::Config("missing 'modes' header".into()))?;
    if modes.len() != expected {
        return Err(Error::Config(format!(
            "mode count mismatch: header says {expected}, found {}",
            modes.len()
        )));
    }
    Ok(FourierFunction1D::new(period, offset, modes)?.with_lineage(lineage))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn roundtrip_preserves_function(
            ks in proptest::collection::btree_set(-200i64..200, 0..20),
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let modes: Vec<(i64, Complex64)> = ks
                .iter()
                .map(|&k| (k, Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))))
                .collect();
            let f = FourierFunction1D::new(8.0, -4.0, modes).unwrap().with_lineage("prop test");
            let g = parse_fourier(&write_fourier(&f)).unwrap();
            prop_assert_eq!(f.period(), g.period());
            prop_assert_eq!(f.offset(), g.offset());
            prop_assert_eq!(f.modes(), g.modes());
            prop_assert_eq!(&f.lineage, &g.lineage);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# fourier-function v1\nperiod 8\noffset 0\nmodes 1\nnot-a-mode\n";
        let err = parse_fourier(text).unwrap_err().to_string();
        assert!(err.contains("line 5"), "{err}");
    }
}
