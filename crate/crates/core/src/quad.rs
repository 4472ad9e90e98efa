//! Quadrature building blocks: fixed Gauss–Legendre rules and a globally
//! adaptive Gauss–Kronrod (10/21) integrator over real, vector-valued
//! integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes mapped to [a, b] with weights scaled accordingly.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let pn = if n == 0 { 1.0 } else { p1 };
    let pn1 = if n == 0 { 0.0 } else { p0 };
    let d = n as f64 * (x * pn - pn1) / (x * x - 1.0);
    (pn, d)
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_634_826,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// The 21 Kronrod abscissae mapped to [a, b], in a fixed order.
pub fn kronrod_points(a: f64, b: f64) -> [f64; 21] {
    let h = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut out = [0.0; 21];
    for j in 0..10 {
        out[2 * j] = mid - h * XGK[j];
        out[2 * j + 1] = mid + h * XGK[j];
    }
    out[20] = mid;
    out
}

/// Applies the G10/K21 pair to function values sampled at [`kronrod_points`].
/// Returns (Kronrod estimate, error estimate) per component.
pub fn kronrod_combine<const N: usize>(a: f64, b: f64, vals: &[[f64; N]; 21]) -> ([f64; N], [f64; N]) {
    let h = 0.5 * (b - a);
    let mut res = [0.0; N];
    let mut err = [0.0; N];
    for c in 0..N {
        let fc = vals[20][c];
        let mut k = WGK[10] * fc;
        let mut g = 0.0;
        let mut abs = WGK[10] * fc.abs();
        for j in 0..10 {
            let s = vals[2 * j][c] + vals[2 * j + 1][c];
            k += WGK[j] * s;
            abs += WGK[j] * (vals[2 * j][c].abs() + vals[2 * j + 1][c].abs());
            if j % 2 == 1 {
                g += WG[j / 2] * s;
            }
        }
        let mean = 0.5 * k;
        let mut asc = WGK[10] * (fc - mean).abs();
        for j in 0..10 {
            asc += WGK[j] * ((vals[2 * j][c] - mean).abs() + (vals[2 * j + 1][c] - mean).abs());
        }
        let mut e = ((k - g) * h).abs();
        let asc = asc * h.abs();
        let abs = abs * h.abs();
        if asc != 0.0 && e != 0.0 {
            e = asc * (200.0 * e / asc).powf(1.5).min(1.0);
        }
        if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            e = e.max(50.0 * f64::EPSILON * abs);
        }
        res[c] = k * h;
        err[c] = e;
    }
    (res, err)
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveResult<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub converged: bool,
    pub intervals: usize,
}

struct Segment<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    err: f64,
    seq: usize,
}

impl<const N: usize> PartialEq for Segment<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<const N: usize> Eq for Segment<N> {}
impl<const N: usize> PartialOrd for Segment<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Segment<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Globally adaptive G10/K21 integration of a vector integrand over the
/// union of the intervals defined by consecutive `breakpoints`.
///
/// `eval` receives the 21 abscissae of one segment and must return the
/// integrand at each of them; this lets callers evaluate a segment in
/// parallel while keeping the refinement order deterministic. The error
/// norm is the sum of the component errors; convergence is reached when it
/// falls below `max(abs_tol, rel_tol · Σ|value|)`.
pub fn adaptive<const N: usize, E>(breakpoints: &[f64], opts: AdaptiveOptions, mut eval: E) -> AdaptiveResult<N>
where
    E: FnMut(&[f64; 21]) -> [[f64; N]; 21],
{
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    let mut rule = |a: f64, b: f64, seq: usize| {
        let pts = kronrod_points(a, b);
        let vals = eval(&pts);
        let (value, err) = kronrod_combine(a, b, &vals);
        Segment {
            a,
            b,
            value,
            err: err.iter().sum(),
            seq,
        }
    };
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            heap.push(rule(w[0], w[1], seq));
            seq += 1;
        }
    }
    let totals = |heap: &BinaryHeap<Segment<N>>| {
        let mut segs: Vec<&Segment<N>> = heap.iter().collect();
        segs.sort_by(|x, y| x.a.total_cmp(&y.a));
        let mut v = [0.0; N];
        let mut e = 0.0;
        for s in segs {
            for c in 0..N {
                v[c] += s.value[c];
            }
            e += s.err;
        }
        (v, e)
    };
    let mut value_sum = [0.0; N];
    let mut err_sum = 0.0;
    for s in heap.iter() {
        for c in 0..N {
            value_sum[c] += s.value[c];
        }
        err_sum += s.err;
    }
    let tol = |v: &[f64; N]| opts.abs_tol.max(opts.rel_tol * v.iter().map(|x| x.abs()).sum::<f64>());
    let mut converged = err_sum <= tol(&value_sum);
    while !converged && heap.len() < opts.max_intervals {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        let left = rule(worst.a, mid, seq);
        let right = rule(mid, worst.b, seq + 1);
        seq += 2;
        for c in 0..N {
            value_sum[c] += left.value[c] + right.value[c] - worst.value[c];
        }
        err_sum += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        converged = err_sum <= tol(&value_sum);
    }
    let (value, error) = totals(&heap);
    AdaptiveResult {
        value,
        error,
        converged: converged || error <= tol(&value),
        intervals: heap.len(),
    }
}

/// Scalar convenience wrapper around [`adaptive`] with serial evaluation.
pub fn adaptive_scalar<F: FnMut(f64) -> f64>(breakpoints: &[f64], opts: AdaptiveOptions, mut f: F) -> AdaptiveResult<1> {
    adaptive::<1, _>(breakpoints, opts, |pts| {
        let mut out = [[0.0; 1]; 21];
        for (o, &x) in out.iter_mut().zip(pts) {
            o[0] = f(x);
        }
        out
    })
}

/// Pairwise summation with a fixed association order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        for n in [1usize, 2, 5, 16, 32, 64] {
            let gl = GaussLegendre::new(n);
            let ws: f64 = gl.weights.iter().sum();
            assert!((ws - 2.0).abs() < 1e-13, "n={n}");
            let deg = 2 * n - 1;
            let v = gl.integrate(0.0, 1.0, |x| x.powi(deg as i32));
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn adaptive_handles_peaks_and_log_singularities() {
        let opts = AdaptiveOptions {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_intervals: 2000,
        };
        let r = adaptive_scalar(&[0.0, 1.0], opts, |x| x.ln());
        assert!(r.converged);
        assert!((r.value[0] + 1.0).abs() < 1e-11);
        let eps = 1e-4;
        let r = adaptive_scalar(&[-1.0, 0.3, 1.0], opts, |x| eps / ((x - 0.3) * (x - 0.3) + eps * eps));
        let exact = (0.7f64 / eps).atan() + (1.3f64 / eps).atan();
        assert!((r.value[0] / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pairwise_is_plain_sum_for_small_inputs() {
        let xs: Vec<f64> = (1..=100).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&xs), 5050.0);
    }
}
