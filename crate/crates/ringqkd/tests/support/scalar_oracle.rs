//! Stand-alone evaluation of the decoy-state key rate, written against the
//! textbook formulas with no code shared with the library.

pub struct Params {
    pub mu: f64,
    pub y0: f64,
    pub e_det: f64,
    pub eta_bob: f64,
    pub q: f64,
    pub f_ec: f64,
    pub pulse_rate_hz: f64,
    pub ceiling_bps: f64,
}

pub fn literature(eta_bob: f64, ceiling_bps: f64) -> Params {
    Params {
        mu: 0.5,
        y0: 1.7e-6,
        e_det: 0.033,
        eta_bob,
        q: 0.5,
        f_ec: 1.22,
        pulse_rate_hz: 1e9,
        ceiling_bps,
    }
}

fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

pub fn key_rate_bps(p: &Params, loss_db: f64) -> f64 {
    let eta = p.eta_bob * 10f64.powf(-loss_db / 10.0);
    let clicks = 1.0 - (-eta * p.mu).exp();
    let q_mu = p.y0 + clicks;
    let e_mu = (0.5 * p.y0 + p.e_det * clicks) / q_mu;
    let y1 = p.y0 + eta - p.y0 * eta;
    let q1 = y1 * p.mu * (-p.mu).exp();
    let e1 = (0.5 * p.y0 + p.e_det * eta) / y1;
    let per_pulse = p.q * (q1 * (1.0 - h2(e1)) - q_mu * p.f_ec * h2(e_mu));
    if per_pulse <= 0.0 {
        0.0
    } else {
        (per_pulse * p.pulse_rate_hz).min(p.ceiling_bps)
    }
}
