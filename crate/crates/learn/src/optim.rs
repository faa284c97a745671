//! Optimizers: Adam for real training runs, plain SGD for tests.

use crate::network::{Gradients, Network};
use ndarray::{Array1, Array2};

pub struct Sgd {
    pub lr: f32,
}

impl Sgd {
    pub fn step(&mut self, net: &mut Network, g: &Gradients) {
        for (w, gw) in net.weights.iter_mut().zip(&g.weights) {
            w.zip_mut_with(gw, |p, &d| *p -= self.lr * d);
        }
        for (b, gb) in net.biases.iter_mut().zip(&g.biases) {
            b.zip_mut_with(gb, |p, &d| *p -= self.lr * d);
        }
    }
}

pub struct Adam {
    pub lr: f32,
    pub beta1: f32,
    pub beta2: f32,
    pub eps: f32,
    t: i32,
    mw: Vec<Array2<f32>>,
    vw: Vec<Array2<f32>>,
    mb: Vec<Array1<f32>>,
    vb: Vec<Array1<f32>>,
}

impl Adam {
    pub fn new(lr: f32, net: &Network) -> Adam {
        Adam {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            t: 0,
            mw: net.weights.iter().map(|w| Array2::zeros(w.raw_dim())).collect(),
            vw: net.weights.iter().map(|w| Array2::zeros(w.raw_dim())).collect(),
            mb: net.biases.iter().map(|b| Array1::zeros(b.raw_dim())).collect(),
            vb: net.biases.iter().map(|b| Array1::zeros(b.raw_dim())).collect(),
        }
    }

    pub fn step(&mut self, net: &mut Network, g: &Gradients) {
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t);
        let bc2 = 1.0 - self.beta2.powi(self.t);
        let (b1, b2, lr, eps) = (self.beta1, self.beta2, self.lr, self.eps);
        let update = |p: &mut f32, d: f32, m: &mut f32, v: &mut f32| {
            *m = b1 * *m + (1.0 - b1) * d;
            *v = b2 * *v + (1.0 - b2) * d * d;
            let mh = *m / bc1;
            let vh = *v / bc2;
            *p -= lr * mh / (vh.sqrt() + eps);
        };
        for (((w, gw), m), v) in
            net.weights.iter_mut().zip(&g.weights).zip(&mut self.mw).zip(&mut self.vw)
        {
            for (((p, &d), m), v) in w.iter_mut().zip(gw).zip(m.iter_mut()).zip(v.iter_mut()) {
                update(p, d, m, v);
            }
        }
        for (((b, gb), m), v) in
            net.biases.iter_mut().zip(&g.biases).zip(&mut self.mb).zip(&mut self.vb)
        {
            for (((p, &d), m), v) in b.iter_mut().zip(gb).zip(m.iter_mut()).zip(v.iter_mut()) {
                update(p, d, m, v);
            }
        }
    }
}
