//! Multilayer perceptron with ReLU hidden layers and a softmax output
//! over heuristic-value classes. Parameters are 32-bit during training;
//! a 16-bit quantized flavor is available for inference-size accounting.

use crate::loss::LossConfig;
use half::f16;
use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkArchitecture {
    pub input: usize,
    pub hidden: Vec<usize>,
    pub classes: usize,
}

impl NetworkArchitecture {
    pub fn new(input: usize, hidden: Vec<usize>, classes: usize) -> Result<Self, LearnError> {
        if input == 0 || classes < 2 || hidden.iter().any(|&w| w == 0) {
            return Err(LearnError::BadArchitecture);
        }
        Ok(NetworkArchitecture { input, hidden, classes })
    }

    /// Layer widths including input and output: w0, w1, …, wL, ℓ.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = vec![self.input];
        w.extend_from_slice(&self.hidden);
        w.push(self.classes);
        w
    }

    pub fn depth(&self) -> usize {
        self.hidden.len()
    }

    /// Network size U = w1 + … + wL (hidden units only).
    pub fn size(&self) -> usize {
        self.hidden.iter().sum()
    }

    /// Total parameter count W = Σ (in+1)·out over affine layers.
    pub fn param_count(&self) -> usize {
        self.widths().windows(2).map(|w| (w[0] + 1) * w[1]).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    F32,
    F16,
}

#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error("architecture invalid: widths must be ≥ 1 and class count ≥ 2")]
    BadArchitecture,
    #[error("non-finite activation in layer {layer}")]
    NonFinite { layer: usize },
    #[error("feature width {got} does not match network input width {want}")]
    FeatureWidth { got: usize, want: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("model format: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    arch: NetworkArchitecture,
    /// Row-major (out × in) per affine layer.
    pub(crate) weights: Vec<Array2<f32>>,
    pub(crate) biases: Vec<Array1<f32>>,
    precision: Precision,
}

/// Loss gradients with the same shapes as the parameters.
#[derive(Clone, Debug)]
pub struct Gradients {
    pub weights: Vec<Array2<f32>>,
    pub biases: Vec<Array1<f32>>,
}

impl Network {
    /// He-style initialization, deterministic for a fixed RNG stream.
    pub fn random(arch: NetworkArchitecture, rng: &mut ChaCha8Rng) -> Network {
        let widths = arch.widths();
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for w in widths.windows(2) {
            let (fan_in, fan_out) = (w[0], w[1]);
            let scale = (2.0 / fan_in as f32).sqrt();
            let m = Array2::from_shape_fn((fan_out, fan_in), |_| {
                (rng.gen::<f32>() * 2.0 - 1.0) * scale
            });
            weights.push(m);
            biases.push(Array1::zeros(fan_out));
        }
        Network { arch, weights, biases, precision: Precision::F32 }
    }

    pub fn zeros(arch: NetworkArchitecture) -> Network {
        let widths = arch.widths();
        let weights =
            widths.windows(2).map(|w| Array2::zeros((w[1], w[0]))).collect();
        let biases = widths.windows(2).map(|w| Array1::zeros(w[1])).collect();
        Network { arch, weights, biases, precision: Precision::F32 }
    }

    pub(crate) fn from_parts(
        arch: NetworkArchitecture,
        weights: Vec<Array2<f32>>,
        biases: Vec<Array1<f32>>,
        precision: Precision,
    ) -> Network {
        Network { arch, weights, biases, precision }
    }

    pub fn architecture(&self) -> &NetworkArchitecture {
        &self.arch
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Shape (out, in) of one affine layer's weight matrix.
    pub fn weight_shape(&self, layer: usize) -> (usize, usize) {
        self.weights[layer].dim()
    }

    pub fn weight(&self, layer: usize, row: usize, col: usize) -> f32 {
        self.weights[layer][(row, col)]
    }

    pub fn set_weight(&mut self, layer: usize, row: usize, col: usize, v: f32) {
        self.weights[layer][(row, col)] = v;
    }

    /// Serialized parameter bytes: 4 per parameter at 32-bit, 2 at 16-bit.
    pub fn param_bytes(&self) -> usize {
        let per = match self.precision {
            Precision::F32 => 4,
            Precision::F16 => 2,
        };
        self.arch.param_count() * per
    }

    /// Forward pass returning class probabilities, one row per input row.
    pub fn forward(&self, x: ArrayView2<f32>) -> Result<Array2<f32>, LearnError> {
        Ok(self.forward_cached(x)?.1)
    }

    /// Forward pass that also returns the post-ReLU activations of every
    /// hidden layer (needed for backprop). Activation 0 is the input.
    pub(crate) fn forward_cached(
        &self,
        x: ArrayView2<f32>,
    ) -> Result<(Vec<Array2<f32>>, Array2<f32>), LearnError> {
        if x.ncols() != self.arch.input {
            return Err(LearnError::FeatureWidth { got: x.ncols(), want: self.arch.input });
        }
        let mut acts: Vec<Array2<f32>> = vec![x.to_owned()];
        let last = self.weights.len() - 1;
        for (i, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let mut z = acts.last().unwrap().dot(&w.t());
            z += b;
            if !z.iter().all(|v| v.is_finite()) {
                return Err(LearnError::NonFinite { layer: i + 1 });
            }
            if i < last {
                z.mapv_inplace(|v| v.max(0.0));
                acts.push(z);
            } else {
                // log-sum-exp softmax, row-wise
                for mut row in z.axis_iter_mut(Axis(0)) {
                    let m = row.iter().cloned().fold(f32::NEG_INFINITY, f32::max);
                    row.mapv_inplace(|v| (v - m).exp());
                    let s = row.sum();
                    row.mapv_inplace(|v| v / s);
                }
                return Ok((acts, z));
            }
        }
        unreachable!("network has at least one affine layer")
    }

    /// Heuristic value for one feature row: argmax class, ties broken
    /// toward the lower class, value = class row index.
    pub fn predict(&self, features: ArrayView1<f32>) -> Result<usize, LearnError> {
        let x = features.insert_axis(Axis(0));
        let p = self.forward(x)?;
        let row = p.row(0);
        let mut best = 0;
        for (i, &v) in row.iter().enumerate() {
            if v > row[best] {
                best = i;
            }
        }
        Ok(best)
    }

    /// Mean loss over the batch and exact analytic gradients. Parameters
    /// are 32-bit, but the forward/backward arithmetic runs in 64-bit so
    /// the gradients agree with finite differences to high precision.
    pub fn loss_and_gradients(
        &self,
        x: ArrayView2<f32>,
        labels: &[usize],
        cfg: &LossConfig,
    ) -> Result<(f64, Gradients), LearnError> {
        assert_eq!(x.nrows(), labels.len());
        if x.ncols() != self.arch.input {
            return Err(LearnError::FeatureWidth { got: x.ncols(), want: self.arch.input });
        }
        let n = x.nrows();
        let w64: Vec<Array2<f64>> =
            self.weights.iter().map(|w| w.mapv(|v| v as f64)).collect();
        let b64: Vec<Array1<f64>> =
            self.biases.iter().map(|b| b.mapv(|v| v as f64)).collect();

        let mut acts: Vec<Array2<f64>> = vec![x.mapv(|v| v as f64)];
        let last = w64.len() - 1;
        let mut probs = Array2::<f64>::zeros((0, 0));
        for (i, (w, b)) in w64.iter().zip(&b64).enumerate() {
            let mut z = acts.last().unwrap().dot(&w.t());
            z += b;
            if !z.iter().all(|v| v.is_finite()) {
                return Err(LearnError::NonFinite { layer: i + 1 });
            }
            if i < last {
                z.mapv_inplace(|v| v.max(0.0));
                acts.push(z);
            } else {
                for mut row in z.axis_iter_mut(Axis(0)) {
                    let m = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    row.mapv_inplace(|v| (v - m).exp());
                    let s = row.sum();
                    row.mapv_inplace(|v| v / s);
                }
                probs = z;
            }
        }

        let mut loss = 0.0f64;
        let mut dz = Array2::<f64>::zeros(probs.raw_dim());
        for i in 0..n {
            let p = probs.row(i).to_vec();
            loss += crate::loss::sample_loss_f64(&p, labels[i], cfg);
            let g = crate::loss::logit_grad_f64(&p, labels[i], cfg);
            dz.row_mut(i).assign(&Array1::from(g));
        }
        loss /= n as f64;
        dz.mapv_inplace(|v| v / n as f64);

        let layers = w64.len();
        let mut gw = Vec::with_capacity(layers);
        let mut gb = Vec::with_capacity(layers);
        let mut delta = dz; // gradient at the current layer's pre-activation
        for i in (0..layers).rev() {
            gw.push(delta.t().dot(&acts[i]).mapv(|v| v as f32));
            gb.push(delta.sum_axis(Axis(0)).mapv(|v| v as f32));
            if i > 0 {
                let mut up = delta.dot(&w64[i]);
                // ReLU mask of the producing layer's activation
                up.zip_mut_with(&acts[i], |d, &a| {
                    if a <= 0.0 {
                        *d = 0.0;
                    }
                });
                delta = up;
            }
        }
        gw.reverse();
        gb.reverse();
        for (i, (w, b)) in gw.iter().zip(&gb).enumerate() {
            if !w.iter().all(|v| v.is_finite()) || !b.iter().all(|v| v.is_finite()) {
                return Err(LearnError::NonFinite { layer: i + 1 });
            }
        }
        Ok((loss, Gradients { weights: gw, biases: gb }))
    }

    /// Training-speed variant of [`loss_and_gradients`]: the matrix
    /// arithmetic stays in 32-bit (per-row loss terms still use 64-bit).
    /// Same math as the 64-bit path, used by the training loop.
    ///
    /// [`loss_and_gradients`]: Network::loss_and_gradients
    pub fn loss_and_gradients_f32(
        &self,
        x: ArrayView2<f32>,
        labels: &[usize],
        cfg: &LossConfig,
    ) -> Result<(f64, Gradients), LearnError> {
        assert_eq!(x.nrows(), labels.len());
        let n = x.nrows();
        let (acts, probs) = self.forward_cached(x)?;

        let mut loss = 0.0f64;
        let mut dz = Array2::<f32>::zeros(probs.raw_dim());
        for i in 0..n {
            let p: Vec<f64> = probs.row(i).iter().map(|&v| v as f64).collect();
            loss += crate::loss::sample_loss_f64(&p, labels[i], cfg);
            let g = crate::loss::logit_grad_f64(&p, labels[i], cfg);
            for (slot, v) in dz.row_mut(i).iter_mut().zip(g) {
                *slot = (v / n as f64) as f32;
            }
        }
        loss /= n as f64;

        let layers = self.weights.len();
        let mut gw = Vec::with_capacity(layers);
        let mut gb = Vec::with_capacity(layers);
        let mut delta = dz;
        for i in (0..layers).rev() {
            gw.push(delta.t().dot(&acts[i]));
            gb.push(delta.sum_axis(Axis(0)));
            if i > 0 {
                let mut up = delta.dot(&self.weights[i]);
                up.zip_mut_with(&acts[i], |d, &a| {
                    if a <= 0.0 {
                        *d = 0.0;
                    }
                });
                delta = up;
            }
        }
        gw.reverse();
        gb.reverse();
        for (i, (w, b)) in gw.iter().zip(&gb).enumerate() {
            if !w.iter().all(|v| v.is_finite()) || !b.iter().all(|v| v.is_finite()) {
                return Err(LearnError::NonFinite { layer: i + 1 });
            }
        }
        Ok((loss, Gradients { weights: gw, biases: gb }))
    }

    /// Reference loss evaluation entirely in 64-bit, for finite-difference
    /// gradient checks.
    pub fn eval_loss_f64(&self, features: &[f32], label: usize, cfg: &LossConfig) -> f64 {
        let mut act: Vec<f64> = features.iter().map(|&v| v as f64).collect();
        let last = self.weights.len() - 1;
        for (i, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let mut z = vec![0.0f64; b.len()];
            for (j, zj) in z.iter_mut().enumerate() {
                let mut s = b[j] as f64;
                for (k, &a) in act.iter().enumerate() {
                    s += w[(j, k)] as f64 * a;
                }
                *zj = s;
            }
            if i < last {
                for v in z.iter_mut() {
                    *v = v.max(0.0);
                }
                act = z;
            } else {
                let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let exp: Vec<f64> = z.iter().map(|&v| (v - m).exp()).collect();
                let sum: f64 = exp.iter().sum();
                let p: Vec<f64> = exp.iter().map(|&e| e / sum).collect();
                return crate::loss::sample_loss_f64(&p, label, cfg);
            }
        }
        unreachable!()
    }

    /// Round every parameter through 16-bit floats. Idempotent.
    pub fn quantize_half(&self) -> Network {
        let round = |v: f32| f16::from_f32(v).to_f32();
        Network {
            arch: self.arch.clone(),
            weights: self.weights.iter().map(|w| w.mapv(round)).collect(),
            biases: self.biases.iter().map(|b| b.mapv(round)).collect(),
            precision: Precision::F16,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loss::LossMode;
    use ndarray::array;
    use rand::SeedableRng;

    fn arch(i: usize, h: &[usize], c: usize) -> NetworkArchitecture {
        NetworkArchitecture::new(i, h.to_vec(), c).unwrap()
    }

    #[test]
    fn architecture_accounting() {
        let a = arch(324, &[64, 32], 12);
        assert_eq!(a.depth(), 2);
        assert_eq!(a.size(), 96);
        assert_eq!(a.param_count(), 325 * 64 + 65 * 32 + 33 * 12);
        assert!(NetworkArchitecture::new(0, vec![4], 3).is_err());
        assert!(NetworkArchitecture::new(4, vec![0], 3).is_err());
        assert!(NetworkArchitecture::new(4, vec![4], 1).is_err());
    }

    #[test]
    fn zero_network_is_uniform() {
        let net = Network::zeros(arch(5, &[7], 4));
        let x = array![[1.0f32, 0.0, 1.0, 0.0, 1.0], [0.0, 1.0, 0.0, 1.0, 0.0]];
        let p = net.forward(x.view()).unwrap();
        for row in p.rows() {
            for &v in row {
                assert!((v - 0.25).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn softmax_normalizes_and_shift_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut net = Network::random(arch(6, &[10, 8], 5), &mut rng);
        let x = Array2::from_shape_fn((4, 6), |_| rng.gen::<f32>());
        let p = net.forward(x.view()).unwrap();
        for row in p.rows() {
            assert!((row.sum() - 1.0).abs() < 1e-6);
        }
        let last = net.biases.len() - 1;
        net.biases[last] += 3.5;
        let q = net.forward(x.view()).unwrap();
        for (a, b) in p.iter().zip(q.iter()) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn predict_breaks_ties_low() {
        // zero net → exactly uniform probabilities → class 0 wins
        let net = Network::zeros(arch(3, &[4], 6));
        let x = array![1.0f32, 1.0, 0.0];
        assert_eq!(net.predict(x.view()).unwrap(), 0);
    }

    #[test]
    fn ce_logit_gradient_is_p_minus_onehot() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // no hidden layer: logits = A x + b, so dL/db = dL/dz directly
        let net = Network::random(arch(4, &[], 5), &mut rng);
        let x = Array2::from_shape_fn((1, 4), |_| rng.gen::<f32>());
        let cfg = LossConfig { mode: LossMode::Ce, beta: 1.0, eta: 0.0 };
        let p = net.forward(x.view()).unwrap();
        let (_, g) = net.loss_and_gradients(x.view(), &[2], &cfg).unwrap();
        for k in 0..5 {
            let expect = p[(0, k)] - if k == 2 { 1.0 } else { 0.0 };
            assert!((g.biases[0][k] - expect).abs() < 1e-6);
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = arch(6, &[8], 5);
        for cfg in [
            LossConfig { mode: LossMode::Ce, beta: 1.0, eta: 0.0 },
            LossConfig { mode: LossMode::Cea, beta: 1.0, eta: 0.01 },
            LossConfig { mode: LossMode::Cea, beta: 0.6, eta: 0.001 },
        ] {
            let mut net = Network::random(a.clone(), &mut rng);
            let feats: Vec<f32> = (0..6).map(|_| rng.gen::<f32>()).collect();
            let x = Array2::from_shape_vec((1, 6), feats.clone()).unwrap();
            let label = 3;
            let (_, g) = net.loss_and_gradients(x.view(), &[label], &cfg).unwrap();
            let eps = 1e-4f32;
            for _ in 0..20 {
                let layer = rng.gen_range(0..2usize);
                let (r, c) = {
                    let w = &net.weights[layer];
                    (rng.gen_range(0..w.nrows()), rng.gen_range(0..w.ncols()))
                };
                let orig = net.weights[layer][(r, c)];
                let (wp, wm) = (orig + eps, orig - eps);
                net.weights[layer][(r, c)] = wp;
                let lp = net.eval_loss_f64(&feats, label, &cfg);
                net.weights[layer][(r, c)] = wm;
                let lm = net.eval_loss_f64(&feats, label, &cfg);
                net.weights[layer][(r, c)] = orig;
                // the step itself rounds to f32, so divide by the
                // achieved difference rather than the nominal 2ε
                let fd = (lp - lm) / (wp as f64 - wm as f64);
                let an = g.weights[layer][(r, c)] as f64;
                let denom = fd.abs().max(an.abs()).max(1e-6);
                assert!(
                    ((fd - an) / denom).abs() < 1e-4,
                    "layer {layer} ({r},{c}): fd {fd} vs analytic {an}"
                );
            }
        }
    }

    #[test]
    fn fast_gradients_agree_with_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = arch(12, &[16, 8], 6);
        let net = Network::random(a, &mut rng);
        let x = Array2::from_shape_fn((32, 12), |_| rng.gen::<f32>());
        let labels: Vec<usize> = (0..32).map(|_| rng.gen_range(0..6)).collect();
        let cfg = LossConfig { mode: LossMode::Cea, beta: 2.0, eta: 0.05 };
        let (l64, g64) = net.loss_and_gradients(x.view(), &labels, &cfg).unwrap();
        let (l32, g32) = net.loss_and_gradients_f32(x.view(), &labels, &cfg).unwrap();
        assert!((l64 - l32).abs() < 1e-5 * l64.abs().max(1.0));
        for (a, b) in g64.weights.iter().zip(&g32.weights) {
            for (&u, &v) in a.iter().zip(b) {
                assert!((u - v).abs() < 1e-4 * u.abs().max(1e-3), "{u} vs {v}");
            }
        }
    }

    #[test]
    fn quantize_is_idempotent_and_halves_bytes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let net = Network::random(arch(10, &[16], 4), &mut rng);
        let q = net.quantize_half();
        assert_eq!(q.quantize_half(), q);
        assert_eq!(q.param_bytes() * 2, net.param_bytes());
        assert_eq!(q.precision(), Precision::F16);
    }
}
