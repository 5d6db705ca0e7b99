use std::io::{BufRead, Write};
use std::path::Path;

use super::{Model, TrainParams};
use crate::{Error, Result};

/// Writes `lambda\titerations\tseed` then one `term_id\tweight` row per
/// dimension. Floats use shortest round-trip formatting.
pub fn write_model_tsv<W: Write>(model: &Model, mut w: W) -> std::io::Result<()> {
    let p = &model.params;
    writeln!(w, "{}\t{}\t{}", p.lambda, p.iterations, p.seed)?;
    for (id, weight) in model.weights().iter().enumerate() {
        writeln!(w, "{id}\t{weight}")?;
    }
    Ok(())
}

pub fn read_model_tsv<R: BufRead>(reader: R, origin: &Path) -> Result<Model> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "missing `lambda iterations seed` header"))?
        .map_err(|e| Error::io(origin, e))?;
    let cols: Vec<&str> = header.split('\t').collect();
    let bad_header = || Error::parse(origin, 1, "expected `lambda\\titerations\\tseed`");
    let [lambda, iterations, seed] = cols[..] else {
        return Err(bad_header());
    };
    let params = TrainParams {
        lambda: lambda.parse().map_err(|_| bad_header())?,
        iterations: iterations.parse().map_err(|_| bad_header())?,
        seed: seed.parse().map_err(|_| bad_header())?,
    };
    let mut weights = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let n = i + 2;
        let Some((id, weight)) = line.split_once('\t') else {
            return Err(Error::parse(origin, n, "expected `term_id\\tweight`"));
        };
        let id: usize = id.parse().map_err(|_| Error::parse(origin, n, "bad term id"))?;
        let weight: f64 = weight.parse().map_err(|_| Error::parse(origin, n, "bad weight"))?;
        if id >= weights.len() {
            weights.resize(id + 1, 0.0);
        }
        weights[id] = weight;
    }
    Ok(Model::from_weights(params, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_exact() {
        let params = TrainParams {
            lambda: 1e-4,
            iterations: 123,
            seed: 9,
        };
        let m = Model::from_weights(params, vec![0.1, -3.0e-17, 0.0, 1.0 / 3.0]);
        let mut buf = Vec::new();
        write_model_tsv(&m, &mut buf).unwrap();
        assert!(buf.starts_with(b"0.0001\t123\t9\n0\t0.1\n"));
        let back = read_model_tsv(buf.as_slice(), Path::new("m.tsv")).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn bad_header() {
        assert!(read_model_tsv("x\n".as_bytes(), Path::new("m")).is_err());
    }
}
