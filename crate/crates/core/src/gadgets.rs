//! Deterministic stream builders: two communication-complexity gadget
//! streams, the adversarial tightness instance, and seeded random streams.

use crate::interval::Interval;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GadgetError {
    #[error("bit-string length {got} does not match the required {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("index {index} out of range [1, {max}]")]
    BadIndex { index: usize, max: usize },
    #[error("correlated bits disagree: X1[J1] != X2[J2]")]
    BitCorrelation,
    #[error("parameter {name} = {value} is invalid: {reason}")]
    BadParam {
        name: &'static str,
        value: u64,
        reason: &'static str,
    },
    #[error("malformed stream spec: {0}")]
    BadSpec(String),
}

fn seq(coords: Vec<(f64, f64)>) -> Vec<Interval> {
    coords
        .into_iter()
        .enumerate()
        .map(|(t, (l, r))| Interval::new(l, r, t as u64).expect("generator produced a bad interval"))
        .collect()
}

/// Clique-gadget stream for the index problem: the bit-string is encoded as
/// a stack of shifted unit intervals, followed by one probe interval that
/// overlaps every slot after position `j`, and `j` window-advancing pads.
/// With window `l`, the final window optimum is 2 iff `x[j-1]` is set.
/// `x` is indexed from 1 in the construction, so bit i lives at `x[i-1]`.
pub fn gen_unit_index(x: &[bool], j: usize, l: u64) -> Result<Vec<Interval>, GadgetError> {
    let n = (l as usize).saturating_sub(2);
    if l < 3 {
        return Err(GadgetError::BadParam {
            name: "L",
            value: l,
            reason: "window must be at least 3",
        });
    }
    if x.len() != n {
        return Err(GadgetError::BadLength {
            got: x.len(),
            expected: n,
        });
    }
    if j < 1 || j > n {
        return Err(GadgetError::BadIndex { index: j, max: n });
    }
    let lf = l as f64;
    let denom = 2.0 * lf - 1.0;
    let slot = |i: f64| (i / denom, 1.0 + i / denom);
    let mut coords = Vec::with_capacity(n + 1 + j);
    for i in 1..=n {
        if x[i - 1] {
            coords.push(slot(i as f64));
        } else {
            // left + 1.0 rather than the symmetric 2 - i/L^2 keeps the
            // interval exactly unit under f64 rounding (same value ±1 ulp).
            let left = 1.0 - i as f64 / (lf * lf);
            coords.push((left, left + 1.0));
        }
    }
    let probe_left = 1.0 + j as f64 / denom + 1.0 / (denom * denom);
    coords.push((probe_left, probe_left + 1.0));
    for i in l..l + j as u64 {
        coords.push(slot(i as f64));
    }
    Ok(seq(coords))
}

/// Three-party chained-index stream. Requires window `l` with `(l-2) % 3 == 0`
/// (so `n = (l-2)/3` slots per party), correlated answer bits
/// `x1[j1-1] == x2[j2-1]`, and `j2 >= 2` because the probe pair is built from
/// the endpoints of blocks `j2-1` and `j2`. Probe endpoints are normalized to
/// `[min, max]`, which matters when a neighboring block is a long
/// window-advancing interval with reversed endpoint order.
pub fn gen_chain3(
    x1: &[bool],
    x2: &[bool],
    j1: usize,
    j2: usize,
    l: u64,
) -> Result<Vec<Interval>, GadgetError> {
    if l < 5 || !(l - 2).is_multiple_of(3) {
        return Err(GadgetError::BadParam {
            name: "L",
            value: l,
            reason: "window must satisfy (L - 2) divisible by 3 and L >= 5",
        });
    }
    let n = ((l - 2) / 3) as usize;
    if x1.len() != n || x2.len() != n {
        return Err(GadgetError::BadLength {
            got: if x1.len() != n { x1.len() } else { x2.len() },
            expected: n,
        });
    }
    if j1 < 1 || j1 > n {
        return Err(GadgetError::BadIndex { index: j1, max: n });
    }
    if j2 < 2 || j2 > n {
        return Err(GadgetError::BadIndex { index: j2, max: n });
    }
    if x1[j1 - 1] != x2[j2 - 1] {
        return Err(GadgetError::BitCorrelation);
    }
    let nf = n as f64;
    let mut coords = Vec::new();
    for i in 1..=n {
        let f = i as f64;
        if x1[i - 1] {
            coords.push((f / (3.0 * nf), 1.0 + f / (3.0 * nf)));
        } else {
            coords.push((-10.0 - f, 10.0 + f));
        }
        if x2[i - 1] {
            coords.push((2.0 - f / (3.0 * nf), 3.0 - f / (3.0 * nf)));
        } else {
            coords.push((-11.0 - f, 11.0 + f));
        }
    }
    let block = |i: usize| -> (f64, f64) {
        if i <= n && x2[i - 1] {
            let shift = (i as f64 - 1.0) / (6.0 * nf * nf);
            (
                1.0 + j1 as f64 / (3.0 * nf) + 1.0 / (6.0 * nf) + shift,
                2.0 - j1 as f64 / (3.0 * nf) - 1.0 / (6.0 * nf) + shift,
            )
        } else {
            (-10.0 - i as f64, 11.0 + i as f64)
        }
    };
    for i in 1..=n + 2 * (j1 - 1) {
        coords.push(block(i));
    }
    let (a_prev, b_prev) = block(j2 - 1);
    let (a_cur, b_cur) = block(j2);
    let norm = |u: f64, v: f64| (u.min(v), u.max(v));
    coords.push(norm(
        (2.0 * a_prev + a_cur) / 3.0,
        (a_prev + 2.0 * a_cur) / 3.0,
    ));
    coords.push(norm(
        (2.0 * b_prev + b_cur) / 3.0,
        (b_prev + 2.0 * b_cur) / 3.0,
    ));
    debug_assert_eq!(coords.len(), l as usize + 2 * (j1 - 1));
    Ok(seq(coords))
}

/// The adversarial tightness stream in three parts A, B, C with consecutive
/// arrival indices (A first). `l` is the number of unit cells and must be
/// divisible by 3; only "good" cells (x = 3k + 2) receive B and C intervals.
#[allow(clippy::type_complexity)]
pub fn gen_appendix_hard(
    l: u64,
) -> Result<(Vec<Interval>, Vec<Interval>, Vec<Interval>), GadgetError> {
    if l < 3 || !l.is_multiple_of(3) {
        return Err(GadgetError::BadParam {
            name: "l",
            value: l,
            reason: "cell count must be a positive multiple of 3",
        });
    }
    let good = |x: u64| x % 3 == 2;
    let mut a = Vec::new();
    for x in 1..=l {
        let x = x as f64;
        a.push((x + 0.1, x + 1.0));
    }
    for x in 1..=l {
        let x = x as f64;
        a.push((x + 0.5, x + 0.54));
    }
    for x in 1..=l {
        let x = x as f64;
        a.push((x + 0.95, x + 1.05));
    }
    let mut b = Vec::new();
    for x in (1..=l).filter(|&x| good(x)) {
        let x = x as f64;
        b.push((x - 0.1, x + 0.26));
        b.push((x + 0.53, x + 0.71));
        b.push((x + 0.9, x + 1.1));
    }
    let mut c = Vec::new();
    for x in (1..=l).filter(|&x| good(x)) {
        let x = x as f64;
        c.push((x + 0.06, x + 0.3));
        c.push((x + 0.35, x + 0.75));
    }
    for x in (1..=l).filter(|&x| good(x)) {
        let x = x as f64;
        c.push((x + 0.06, x + 0.15));
        c.push((x + 0.25, x + 0.35));
        c.push((x + 0.55, x + 0.6));
        c.push((x + 0.7, x + 0.8));
        c.push((x + 0.9, x + 0.94));
    }
    let mut arrival = 0u64;
    let mut tag = |coords: Vec<(f64, f64)>| -> Vec<Interval> {
        coords
            .into_iter()
            .map(|(lo, hi)| {
                let iv = Interval::new(lo, hi, arrival).expect("generator produced a bad interval");
                arrival += 1;
                iv
            })
            .collect()
    };
    Ok((tag(a), tag(b), tag(c)))
}

/// Seeded random stream of unit intervals with left endpoints uniform in
/// `[lo, hi]`.
pub fn gen_random_unit(count: usize, lo: f64, hi: f64, seed: u64) -> Vec<Interval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..count)
        .map(|_| {
            let left = rng.gen_range(lo..=hi);
            (left, left + 1.0)
        })
        .collect();
    seq(coords)
}

/// Seeded random stream of arbitrary-length intervals: left endpoints uniform
/// in `[lo, hi]`, lengths uniform in `[0, max_len]`.
pub fn gen_random_arbitrary(
    count: usize,
    lo: f64,
    hi: f64,
    max_len: f64,
    seed: u64,
) -> Vec<Interval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..count)
        .map(|_| {
            let left = rng.gen_range(lo..=hi);
            (left, left + rng.gen_range(0.0..=max_len))
        })
        .collect();
    seq(coords)
}

fn parse_bits(hex: &str, n: usize) -> Result<Vec<bool>, GadgetError> {
    let digits = hex
        .strip_prefix("0x")
        .or_else(|| hex.strip_prefix("0X"))
        .unwrap_or(hex);
    let value = u128::from_str_radix(digits, 16)
        .map_err(|e| GadgetError::BadSpec(format!("bad hex bit-string {hex:?}: {e}")))?;
    if n > 128 {
        return Err(GadgetError::BadSpec(format!(
            "bit-string of {n} bits exceeds the 128-bit spec limit"
        )));
    }
    Ok((0..n).map(|i| value >> i & 1 == 1).collect())
}

fn parse_fields(body: &str) -> Result<std::collections::HashMap<&str, &str>, GadgetError> {
    let mut map = std::collections::HashMap::new();
    for field in body.split(',').filter(|f| !f.is_empty()) {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| GadgetError::BadSpec(format!("field {field:?} is not key=value")))?;
        map.insert(k, v);
    }
    Ok(map)
}

fn field<'a>(
    map: &std::collections::HashMap<&str, &'a str>,
    key: &str,
) -> Result<&'a str, GadgetError> {
    map.get(key)
        .copied()
        .ok_or_else(|| GadgetError::BadSpec(format!("missing field {key:?}")))
}

fn num<T: std::str::FromStr>(raw: &str, key: &str) -> Result<T, GadgetError>
where
    T::Err: std::fmt::Display,
{
    raw.parse()
        .map_err(|e| GadgetError::BadSpec(format!("field {key:?} = {raw:?}: {e}")))
}

fn parse_range(raw: &str) -> Result<(f64, f64), GadgetError> {
    let (lo, hi) = raw
        .split_once("..")
        .ok_or_else(|| GadgetError::BadSpec(format!("range {raw:?} is not lo..hi")))?;
    Ok((num(lo, "range")?, num(hi, "range")?))
}

/// Build a stream from a CLI spec string such as `appendix_hard:l=30`,
/// `unit_index:L=64,J=17,X=0x2a`, `chain3:L=65,J1=3,J2=5,X1=0x..,X2=0x..`,
/// `random_unit:n=1000,range=0..100,seed=7`, or
/// `random_arbitrary:n=500,range=0..100,maxlen=8,seed=7`.
pub fn parse_spec(spec: &str) -> Result<Vec<Interval>, GadgetError> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    let fields = parse_fields(body)?;
    match kind {
        "unit_index" => {
            let l: u64 = num(field(&fields, "L")?, "L")?;
            let j: usize = num(field(&fields, "J")?, "J")?;
            let x = parse_bits(field(&fields, "X")?, (l as usize).saturating_sub(2))?;
            gen_unit_index(&x, j, l)
        }
        "chain3" => {
            let l: u64 = num(field(&fields, "L")?, "L")?;
            let n = if l >= 2 { ((l - 2) / 3) as usize } else { 0 };
            let j1: usize = num(field(&fields, "J1")?, "J1")?;
            let j2: usize = num(field(&fields, "J2")?, "J2")?;
            let x1 = parse_bits(field(&fields, "X1")?, n)?;
            let x2 = parse_bits(field(&fields, "X2")?, n)?;
            gen_chain3(&x1, &x2, j1, j2, l)
        }
        "appendix_hard" => {
            let l: u64 = num(field(&fields, "l")?, "l")?;
            let (a, b, c) = gen_appendix_hard(l)?;
            Ok(a.into_iter().chain(b).chain(c).collect())
        }
        "random_unit" => {
            let n: usize = num(field(&fields, "n")?, "n")?;
            let (lo, hi) = parse_range(field(&fields, "range")?)?;
            let seed: u64 = num(field(&fields, "seed")?, "seed")?;
            Ok(gen_random_unit(n, lo, hi, seed))
        }
        "random_arbitrary" => {
            let n: usize = num(field(&fields, "n")?, "n")?;
            let (lo, hi) = parse_range(field(&fields, "range")?)?;
            let max_len: f64 = num(field(&fields, "maxlen")?, "maxlen")?;
            let seed: u64 = num(field(&fields, "seed")?, "seed")?;
            Ok(gen_random_arbitrary(n, lo, hi, max_len, seed))
        }
        other => Err(GadgetError::BadSpec(format!("unknown generator {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_index_counts_and_lengths() {
        let l = 16u64;
        let x: Vec<bool> = (0..l as usize - 2).map(|i| i % 3 == 0).collect();
        let stream = gen_unit_index(&x, 5, l).unwrap();
        assert_eq!(stream.len(), l as usize - 1 + 5);
        assert!(stream.iter().all(|iv| iv.right == iv.left + 1.0));
    }

    #[test]
    fn unit_index_rejects_bad_j() {
        let x = vec![true; 14];
        assert!(matches!(
            gen_unit_index(&x, 0, 16),
            Err(GadgetError::BadIndex { .. })
        ));
        assert!(matches!(
            gen_unit_index(&x, 15, 16),
            Err(GadgetError::BadIndex { .. })
        ));
    }

    #[test]
    fn chain3_count_and_correlation() {
        let n = 21usize;
        let l = 65u64;
        let mut x1 = vec![false; n];
        let mut x2 = vec![false; n];
        x1[2] = true;
        x2[4] = true;
        // correlated answer bit at (j1=3, j2=5)
        let stream = gen_chain3(&x1, &x2, 3, 5, l).unwrap();
        assert_eq!(stream.len(), l as usize + 2 * (3 - 1));
        x2[4] = false;
        assert_eq!(gen_chain3(&x1, &x2, 3, 5, l), Err(GadgetError::BitCorrelation));
    }

    #[test]
    fn appendix_counts() {
        let (a, b, c) = gen_appendix_hard(30).unwrap();
        assert_eq!(a.len(), 90);
        assert_eq!(b.len(), 30);
        assert_eq!(c.len(), 70);
        // arrivals are consecutive across the three parts
        assert_eq!(a[0].arrival, 0);
        assert_eq!(c.last().unwrap().arrival, 189);
        assert!(matches!(
            gen_appendix_hard(31),
            Err(GadgetError::BadParam { .. })
        ));
    }

    #[test]
    fn appendix_first_good_cell_coordinates() {
        let (_, b, _) = gen_appendix_hard(6).unwrap();
        let close = |got: f64, want: f64| (got - want).abs() < 1e-12;
        assert!(close(b[0].left, 1.9) && close(b[0].right, 2.26));
        assert!(close(b[1].left, 2.53) && close(b[1].right, 2.71));
        assert!(close(b[2].left, 2.9) && close(b[2].right, 3.1));
    }

    #[test]
    fn random_streams_are_deterministic() {
        let a = gen_random_unit(100, 0.0, 50.0, 7);
        let b = gen_random_unit(100, 0.0, 50.0, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|iv| iv.right == iv.left + 1.0));
        assert!(gen_random_unit(0, 0.0, 1.0, 1).is_empty());
        let c = gen_random_arbitrary(50, 0.0, 50.0, 10.0, 3);
        let d = gen_random_arbitrary(50, 0.0, 50.0, 10.0, 4);
        assert_ne!(c, d);
    }

    #[test]
    fn spec_strings_round_trip() {
        let via_spec = parse_spec("random_unit:n=20,range=0..10,seed=3").unwrap();
        assert_eq!(via_spec, gen_random_unit(20, 0.0, 10.0, 3));
        let hard = parse_spec("appendix_hard:l=6").unwrap();
        assert_eq!(hard.len(), 18 + 6 + 14);
        assert!(parse_spec("bogus:x=1").is_err());
        assert!(parse_spec("random_unit:n=oops").is_err());
    }
}
