//! Cross-entropy and Cross-Entropy Admissibility (CEA) losses over
//! softmax class probabilities.
//!
//! Classes are stored 0-based as heuristic values; the CEA formula uses
//! 1-based class indices k = value + 1, so the admissible sum
//! Σ_{k=1}^{h*} (k/h*)^β p_k is never empty, even for value 0.

use ndarray::ArrayView1;

/// Floor for probabilities inside log arguments only.
const P_FLOOR: f64 = 1e-38;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LossMode {
    Ce,
    Cea,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossConfig {
    pub mode: LossMode,
    /// CEA admissibility weight exponent; larger favors strength.
    pub beta: f64,
    /// CEA scale of the plain-CE penalty term.
    pub eta: f64,
}

impl LossConfig {
    pub fn ce() -> LossConfig {
        LossConfig { mode: LossMode::Ce, beta: 1.0, eta: 0.0 }
    }

    pub fn cea(beta: f64, eta: f64) -> LossConfig {
        LossConfig { mode: LossMode::Cea, beta, eta }
    }
}

/// CEA admissible-mass weight for 0-based class j under 0-based label.
fn cea_weight(j: usize, label: usize, beta: f64) -> f64 {
    ((j + 1) as f64 / (label + 1) as f64).powf(beta)
}

/// Per-sample loss from a probability row (64-bit math).
pub fn sample_loss_f64(p: &[f64], label: usize, cfg: &LossConfig) -> f64 {
    match cfg.mode {
        LossMode::Ce => -p[label].max(P_FLOOR).ln(),
        LossMode::Cea => {
            let s: f64 =
                (0..=label).map(|j| cea_weight(j, label, cfg.beta) * p[j]).sum();
            -s.max(P_FLOOR).ln() + cfg.eta * -p[label].max(P_FLOOR).ln()
        }
    }
}

pub fn sample_loss(p: ArrayView1<f32>, label: usize, cfg: &LossConfig) -> f64 {
    let pv: Vec<f64> = p.iter().map(|&v| v as f64).collect();
    sample_loss_f64(&pv, label, cfg)
}

/// Gradient of the per-sample loss w.r.t. the logits.
///
/// With a_j = p_j · ∂L/∂p_j, softmax gives ∂L/∂z_j = a_j − p_j Σ_k a_k.
pub fn logit_grad_f64(p: &[f64], label: usize, cfg: &LossConfig) -> Vec<f64> {
    let n = p.len();
    let mut a = vec![0.0f64; n];
    match cfg.mode {
        LossMode::Ce => {
            // dL/dp_t = -1/p_t, so a_t = -1
            a[label] = -1.0;
        }
        LossMode::Cea => {
            let s: f64 =
                (0..=label).map(|j| cea_weight(j, label, cfg.beta) * p[j]).sum();
            let s = s.max(P_FLOOR);
            for (j, aj) in a.iter_mut().enumerate().take(label + 1) {
                *aj = -cea_weight(j, label, cfg.beta) * p[j] / s;
            }
            a[label] += -cfg.eta; // η term: a_t += p_t · (−η/p_t)
        }
    }
    let total: f64 = a.iter().sum();
    (0..n).map(|j| a[j] - p[j] * total).collect()
}

/// Batch means, for reporting.
pub fn batch_loss(
    probs: ndarray::ArrayView2<f32>,
    labels: &[usize],
    cfg: &LossConfig,
) -> f64 {
    let n = labels.len();
    (0..n).map(|i| sample_loss(probs.row(i), labels[i], cfg)).sum::<f64>() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ce_closed_forms() {
        let cfg = LossConfig::ce();
        assert_eq!(sample_loss_f64(&[0.0, 1.0], 1, &cfg), 0.0);
        let u = sample_loss_f64(&[0.25; 4], 2, &cfg);
        assert!((u - 4.0f64.ln()).abs() < 1e-12);
        // batch of two: losses 0 and 1 → mean 0.5
        let l1 = sample_loss_f64(&[1.0, 0.0], 0, &cfg);
        let l2 = sample_loss_f64(&[(-1.0f64).exp(), 0.0], 0, &cfg);
        assert!(((l1 + l2) / 2.0 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cea_closed_form_uniform() {
        // ℓ=4, true class 4 (value 3), uniform p, β=1, η=0.01
        let cfg = LossConfig::cea(1.0, 0.01);
        let l = sample_loss_f64(&[0.25; 4], 3, &cfg);
        let expect = -(0.625f64).ln() + 0.01 * 4.0f64.ln();
        assert!((l - expect).abs() < 1e-9, "{l} vs {expect}");
    }

    #[test]
    fn cea_zero_iff_all_mass_on_true_class() {
        let cfg = LossConfig::cea(1.0, 0.01);
        assert_eq!(sample_loss_f64(&[0.0, 0.0, 0.0, 1.0], 3, &cfg), 0.0);
        // any mass off the true class gives a positive loss
        assert!(sample_loss_f64(&[0.5, 0.0, 0.0, 0.5], 3, &cfg) > 0.0);
        assert!(sample_loss_f64(&[0.0, 0.0, 1.0, 0.0], 3, &cfg) > 0.0);
    }

    #[test]
    fn cea_underestimating_mass_costs_less_than_overestimating() {
        let cfg = LossConfig::cea(1.0, 0.01);
        // true value 2 (class 3 of 4): mass below beats mass above
        let under = sample_loss_f64(&[0.0, 0.5, 0.5, 0.0], 2, &cfg);
        let over = sample_loss_f64(&[0.0, 0.0, 0.5, 0.5], 2, &cfg);
        assert!(under > 0.0);
        assert!(under < over);
    }

    #[test]
    fn cea_eta_term_dominates_when_true_mass_vanishes() {
        let cfg = LossConfig::cea(1.0, 0.01);
        let p = [1.0 - 1e-6, 0.0, 0.0, 1e-6];
        let l = sample_loss_f64(&p, 3, &cfg);
        // admissible term ≈ −ln(1/4); η term = 0.01·ln(10⁶)
        let adm = -(0.25f64 * (1.0 - 1e-6) + 1e-6).ln();
        assert!((l - (adm + 0.01 * 1e6f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn cea_large_beta_approaches_ce() {
        // (k/h*)^β → indicator of k = h* as β → ∞
        let cfg = LossConfig::cea(50.0, 0.0);
        let ce = LossConfig::ce();
        let p = [0.2, 0.3, 0.1, 0.4];
        for label in 1..4 {
            let a = sample_loss_f64(&p, label, &cfg);
            let b = sample_loss_f64(&p, label, &ce);
            assert!((a - b).abs() < 1e-3, "label {label}: {a} vs {b}");
        }
    }
}
