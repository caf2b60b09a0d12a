//! Static SVG plot emission. Hand-rolled so the output is byte
//! deterministic: fixed canvas, fixed `{:.2}`/`{:.6}` formatting, no
//! timestamps. The only line that may change between releases is the
//! version comment at the top.

use penta_core::rad3;

/// Ordinary least-squares slope of `ys` against `xs`.
pub(crate) fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 360.0;
const MARGIN_L: f64 = 62.0;
const MARGIN_R: f64 = 18.0;
const MARGIN_T: f64 = 46.0;
const MARGIN_B: f64 = 52.0;

struct Panel {
    x0: f64,
    title: &'static str,
    ylabel: &'static str,
}

/// Map a point in log10 space to pixel coordinates inside a panel.
struct Scale {
    lx_min: f64,
    lx_max: f64,
    ly_min: f64,
    ly_max: f64,
}

impl Scale {
    fn from(xs: &[f64], ys: &[f64]) -> Scale {
        let lx: Vec<f64> = xs.iter().map(|v| v.log10()).collect();
        let ly: Vec<f64> = ys.iter().map(|v| v.log10()).collect();
        let (mut lx_min, mut lx_max) = min_max(&lx);
        let (mut ly_min, mut ly_max) = min_max(&ly);
        // pad 5 percent on each side; degenerate spans get a fixed pad so
        // a two-point plot still renders
        let pad = |lo: &mut f64, hi: &mut f64| {
            let span = (*hi - *lo).max(0.2);
            *lo -= 0.05 * span;
            *hi += 0.05 * span;
        };
        pad(&mut lx_min, &mut lx_max);
        pad(&mut ly_min, &mut ly_max);
        Scale {
            lx_min,
            lx_max,
            ly_min,
            ly_max,
        }
    }

    fn px(&self, panel: &Panel, lx: f64) -> f64 {
        panel.x0 + MARGIN_L + (lx - self.lx_min) / (self.lx_max - self.lx_min) * self.plot_w()
    }

    fn py(&self, ly: f64) -> f64 {
        MARGIN_T + (self.ly_max - ly) / (self.ly_max - self.ly_min) * self.plot_h()
    }

    fn plot_w(&self) -> f64 {
        PANEL_W - MARGIN_L - MARGIN_R
    }

    fn plot_h(&self) -> f64 {
        PANEL_H - MARGIN_T - MARGIN_B
    }
}

fn min_max(v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (lo, hi)
}

fn draw_panel(
    out: &mut String,
    panel: &Panel,
    xs: &[f64],
    ys: &[f64],
    reference: f64,
    fitted: Option<f64>,
    warning: Option<&str>,
) {
    use std::fmt::Write;

    let sc = Scale::from(xs, ys);
    let left = panel.x0 + MARGIN_L;
    let right = panel.x0 + PANEL_W - MARGIN_R;
    let top = MARGIN_T;
    let bottom = PANEL_H - MARGIN_B;

    writeln!(
        out,
        r##"  <rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444" stroke-width="1"/>"##,
        left,
        top,
        right - left,
        bottom - top
    )
    .unwrap();
    writeln!(
        out,
        r##"  <text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14" fill="#111">{}</text>"##,
        panel.x0 + PANEL_W / 2.0,
        top - 16.0,
        panel.title
    )
    .unwrap();
    writeln!(
        out,
        r##"  <text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12" fill="#333">log10 N</text>"##,
        panel.x0 + PANEL_W / 2.0,
        bottom + 34.0
    )
    .unwrap();
    writeln!(
        out,
        r##"  <text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12" fill="#333" transform="rotate(-90 {:.2} {:.2})">{}</text>"##,
        panel.x0 + 16.0,
        (top + bottom) / 2.0,
        panel.x0 + 16.0,
        (top + bottom) / 2.0,
        panel.ylabel
    )
    .unwrap();

    // integer log10 gridlines with tick labels
    let gx0 = sc.lx_min.ceil() as i64;
    let gx1 = sc.lx_max.floor() as i64;
    for g in gx0..=gx1 {
        let x = sc.px(panel, g as f64);
        writeln!(
            out,
            r##"  <line x1="{x:.2}" y1="{top:.2}" x2="{x:.2}" y2="{bottom:.2}" stroke="#ddd" stroke-width="1"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r##"  <text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="10" fill="#555">{g}</text>"##,
            bottom + 14.0
        )
        .unwrap();
    }
    let gy0 = sc.ly_min.ceil() as i64;
    let gy1 = sc.ly_max.floor() as i64;
    for g in gy0..=gy1 {
        let y = sc.py(g as f64);
        writeln!(
            out,
            r##"  <line x1="{left:.2}" y1="{y:.2}" x2="{right:.2}" y2="{y:.2}" stroke="#ddd" stroke-width="1"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r##"  <text x="{:.2}" y="{:.2}" text-anchor="end" font-size="10" fill="#555">{g}</text>"##,
            left - 6.0,
            y + 3.0
        )
        .unwrap();
    }

    // reference slope, drawn as a dashed line anchored at the last point
    let lx_last = xs[xs.len() - 1].log10();
    let ly_last = ys[ys.len() - 1].log10();
    let lx_a = sc.lx_min + 0.02 * (sc.lx_max - sc.lx_min);
    let lx_b = sc.lx_max - 0.02 * (sc.lx_max - sc.lx_min);
    // the reference slope is per natural log, identical in log10/log10
    let ly_a = ly_last + reference * (lx_a - lx_last);
    let ly_b = ly_last + reference * (lx_b - lx_last);
    writeln!(
        out,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c33" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        sc.px(panel, lx_a),
        sc.py(ly_a),
        sc.px(panel, lx_b),
        sc.py(ly_b)
    )
    .unwrap();

    for (x, y) in xs.iter().zip(ys) {
        writeln!(
            out,
            r##"  <circle cx="{:.2}" cy="{:.2}" r="3" fill="#1a6" stroke="#064" stroke-width="0.8"/>"##,
            sc.px(panel, x.log10()),
            sc.py(y.log10())
        )
        .unwrap();
    }

    writeln!(
        out,
        r##"  <text x="{:.2}" y="{:.2}" font-size="11" fill="#c33">reference slope {reference:.6}</text>"##,
        left + 8.0,
        top + 16.0
    )
    .unwrap();
    match fitted {
        Some(s) => writeln!(
            out,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" fill="#064">fitted slope {s:.6}</text>"##,
            left + 8.0,
            top + 30.0
        )
        .unwrap(),
        None => writeln!(
            out,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" fill="#b60">fitted slope: n/a</text>"##,
            left + 8.0,
            top + 30.0
        )
        .unwrap(),
    }
    if let Some(w) = warning {
        writeln!(
            out,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" fill="#b60">warning: {w}</text>"##,
            left + 8.0,
            top + 44.0
        )
        .unwrap();
    }
}

/// Render the two-panel log-log plot for generations `0..=t_max`.
///
/// `n`, `apl` and `diam` are indexed by generation. The fitted slope uses
/// the window `10..=t_max` when available so the transient low-t levels do
/// not bias it; with fewer than three points the fit is skipped and a
/// degenerate-input warning is annotated instead.
pub fn render(t_max: u32, n: &[f64], apl: &[f64], diam: &[f64]) -> String {
    use std::fmt::Write;

    let reference = rad3::exponent();
    let window_lo = if t_max >= 10 { 10usize } else { 0 };
    let idx: Vec<usize> = (window_lo..=t_max as usize).collect();
    let degenerate = idx.len() < 3;
    let fit_on = |ys: &[f64]| -> Option<f64> {
        if degenerate {
            return None;
        }
        let xs: Vec<f64> = idx.iter().map(|&i| n[i].ln()).collect();
        let lys: Vec<f64> = idx.iter().map(|&i| ys[i].ln()).collect();
        Some(ols_slope(&xs, &lys))
    };
    let apl_slope = fit_on(apl);
    let diam_slope = fit_on(diam);
    let warning = if degenerate {
        Some("degenerate input, too few points for a slope fit")
    } else {
        None
    };

    let width = PANEL_W * 2.0;
    let mut out = String::new();
    writeln!(out, r##"<?xml version="1.0" encoding="UTF-8"?>"##).unwrap();
    writeln!(
        out,
        "<!-- generated by penta v{} -->",
        env!("CARGO_PKG_VERSION")
    )
    .unwrap();
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL_H:.0}" viewBox="0 0 {width:.0} {PANEL_H:.0}">"##
    )
    .unwrap();
    writeln!(
        out,
        r##"  <rect x="0" y="0" width="{width:.0}" height="{PANEL_H:.0}" fill="#fff"/>"##
    )
    .unwrap();

    let left_panel = Panel {
        x0: 0.0,
        title: "average path length vs N (log-log)",
        ylabel: "log10 APL",
    };
    let right_panel = Panel {
        x0: PANEL_W,
        title: "diameter vs N (log-log)",
        ylabel: "log10 diameter",
    };
    draw_panel(&mut out, &left_panel, n, apl, reference, apl_slope, warning);
    draw_panel(
        &mut out,
        &right_panel,
        n,
        diam,
        reference,
        diam_slope,
        warning,
    );
    writeln!(
        out,
        r##"  <text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="10" fill="#777">generations 0..{t_max}, N = (3*5^(t+1)+5)/4</text>"##,
        width / 2.0,
        PANEL_H - 6.0
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
