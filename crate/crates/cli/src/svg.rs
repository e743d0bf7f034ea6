//! Deterministic SVG rendering of circle configurations.
//!
//! Two charts: `plane` draws the complex plane with circles as SVG circles
//! and lines clipped by the viewport; `stereo` is an orthographic view of the
//! Riemann sphere, z ↦ (2 Re z, 2 Im z)/(1+|z|²), with ∞ at the origin and
//! every circle sampled into a 257-point polyline. All coordinates are
//! printed with 6 decimals, so a fixed input yields byte-identical output.

use num_complex::Complex64;

use cp1graft_core::circles::Circle;
use cp1graft_core::configurations::{dual_circle, CircleConfiguration, Kind, PAIR_CIRCLES};
use cp1graft_core::mobius::RiemannPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Chart {
    /// The plane chart of CP¹; circles through ∞ appear as lines.
    Plane,
    /// Orthographic sphere view; ∞ maps to the origin.
    Stereo,
}

enum Primitive {
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
        class: &'static str,
    },
    Line {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        class: &'static str,
    },
    Polyline {
        points: Vec<(f64, f64)>,
        class: &'static str,
    },
    Dot {
        x: f64,
        y: f64,
        class: &'static str,
    },
    Label {
        x: f64,
        y: f64,
        text: String,
    },
}

pub struct SceneSummary {
    pub intersection_points: usize,
    pub dual_circle: bool,
    pub vertices: usize,
}

const SIZE: f64 = 700.0;
const CIRCLE_CLASSES: [&str; 3] = ["c0", "c1", "c2"];
/// Closed curves are sampled at this many points (endpoints repeated).
const SAMPLES: usize = 256;

struct Scene {
    /// World half-width mapped onto the canvas.
    world: f64,
    primitives: Vec<Primitive>,
}

impl Scene {
    fn to_screen(&self, x: f64, y: f64) -> (f64, f64) {
        let s = SIZE / (2.0 * self.world);
        ((x + self.world) * s, (self.world - y) * s)
    }

    fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
             viewBox=\"0 0 {SIZE} {SIZE}\">\n"
        ));
        out.push_str(
            "<style>\n\
             .c0{stroke:#1f77b4;fill:none;stroke-width:2}\n\
             .c1{stroke:#d62728;fill:none;stroke-width:2}\n\
             .c2{stroke:#2ca02c;fill:none;stroke-width:2}\n\
             .dual{stroke:#777777;fill:none;stroke-width:1.5;stroke-dasharray:6 4}\n\
             .horizon{stroke:#bbbbbb;fill:none;stroke-width:1}\n\
             .pt{fill:#111111}\n\
             .vx{fill:#9467bd}\n\
             text{font-family:monospace;font-size:13px;fill:#333333}\n\
             </style>\n",
        );
        out.push_str(&format!(
            "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#ffffff\"/>\n"
        ));
        for prim in &self.primitives {
            match prim {
                Primitive::Circle { cx, cy, r, class } => {
                    let (sx, sy) = self.to_screen(*cx, *cy);
                    let sr = r * SIZE / (2.0 * self.world);
                    out.push_str(&format!(
                        "<circle cx=\"{sx:.6}\" cy=\"{sy:.6}\" r=\"{sr:.6}\" class=\"{class}\"/>\n"
                    ));
                }
                Primitive::Line {
                    x1,
                    y1,
                    x2,
                    y2,
                    class,
                } => {
                    let (ax, ay) = self.to_screen(*x1, *y1);
                    let (bx, by) = self.to_screen(*x2, *y2);
                    out.push_str(&format!(
                        "<line x1=\"{ax:.6}\" y1=\"{ay:.6}\" x2=\"{bx:.6}\" y2=\"{by:.6}\" \
                         class=\"{class}\"/>\n"
                    ));
                }
                Primitive::Polyline { points, class } => {
                    out.push_str("<polyline points=\"");
                    for (i, (x, y)) in points.iter().enumerate() {
                        let (sx, sy) = self.to_screen(*x, *y);
                        if i > 0 {
                            out.push(' ');
                        }
                        out.push_str(&format!("{sx:.6},{sy:.6}"));
                    }
                    out.push_str(&format!("\" class=\"{class}\"/>\n"));
                }
                Primitive::Dot { x, y, class } => {
                    let (sx, sy) = self.to_screen(*x, *y);
                    let r = if *class == "vx" { 5.0 } else { 4.0 };
                    out.push_str(&format!(
                        "<circle cx=\"{sx:.6}\" cy=\"{sy:.6}\" r=\"{r}\" class=\"{class}\"/>\n"
                    ));
                }
                Primitive::Label { x, y, text } => {
                    let (sx, sy) = self.to_screen(*x, *y);
                    out.push_str(&format!(
                        "<text x=\"{:.6}\" y=\"{:.6}\">{text}</text>\n",
                        sx + 7.0,
                        sy - 7.0
                    ));
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Foot of the perpendicular from the origin and the direction, for a line.
fn line_frame(c: &Circle) -> (Complex64, Complex64) {
    let z0 = -0.5 * c.c * c.b / c.b.norm_sqr();
    let d = Complex64::new(0.0, 1.0) * c.b / c.b.norm();
    (z0, d)
}

fn orthographic(z: Complex64) -> (f64, f64) {
    let w = 1.0 + z.norm_sqr();
    (2.0 * z.re / w, 2.0 * z.im / w)
}

fn project_point(p: &RiemannPoint, chart: Chart) -> Option<(f64, f64)> {
    match chart {
        Chart::Plane => p.to_complex().map(|z| (z.re, z.im)),
        Chart::Stereo => Some(match p.to_complex() {
            Some(z) => orthographic(z),
            None => (0.0, 0.0),
        }),
    }
}

fn push_circle(scene: &mut Scene, c: &Circle, class: &'static str, chart: Chart) {
    match chart {
        Chart::Plane => {
            if let Some((center, radius)) = c.center_radius() {
                scene.primitives.push(Primitive::Circle {
                    cx: center.re,
                    cy: center.im,
                    r: radius,
                    class,
                });
            } else {
                let (z0, d) = line_frame(c);
                let reach = 4.0 * scene.world;
                let (p, q) = (z0 - reach * d, z0 + reach * d);
                scene.primitives.push(Primitive::Line {
                    x1: p.re,
                    y1: p.im,
                    x2: q.re,
                    y2: q.im,
                    class,
                });
            }
        }
        Chart::Stereo => {
            let mut points = Vec::with_capacity(SAMPLES + 1);
            if let Some((center, radius)) = c.center_radius() {
                for k in 0..=SAMPLES {
                    let t = std::f64::consts::TAU * k as f64 / SAMPLES as f64;
                    let z = center + radius * Complex64::new(t.cos(), t.sin());
                    points.push(orthographic(z));
                }
            } else {
                // Sweep the full line, passing through ∞ at both ends.
                let (z0, d) = line_frame(c);
                for k in 0..=SAMPLES {
                    let t =
                        -std::f64::consts::PI + std::f64::consts::TAU * k as f64 / SAMPLES as f64;
                    let z = z0 + (t / 2.0).tan() * d;
                    points.push(orthographic(z));
                }
            }
            scene.primitives.push(Primitive::Polyline { points, class });
        }
    }
}

/// Build the SVG for a configuration, optionally with marked vertices.
pub fn configuration_svg(
    cfg: &CircleConfiguration,
    vertices: Option<&[RiemannPoint; 3]>,
    chart: Chart,
) -> cp1graft_core::Result<(String, SceneSummary)> {
    let mut scene = Scene {
        world: match chart {
            Chart::Plane => 3.5,
            Chart::Stereo => 1.15,
        },
        primitives: Vec::new(),
    };

    if chart == Chart::Stereo {
        // Outline of the sphere.
        scene.primitives.push(Primitive::Circle {
            cx: 0.0,
            cy: 0.0,
            r: 1.0,
            class: "horizon",
        });
    }

    let dual = if cfg.kind == Kind::Hyperbolic {
        let d = dual_circle(cfg)?;
        push_circle(&mut scene, &d, "dual", chart);
        true
    } else {
        false
    };
    for (i, c) in cfg.circles.iter().enumerate() {
        push_circle(&mut scene, c, CIRCLE_CLASSES[i], chart);
    }

    let mut drawn: Vec<RiemannPoint> = Vec::new();
    for (pair_index, (i, j)) in PAIR_CIRCLES.iter().enumerate() {
        for (which, p) in cfg.pairs[pair_index].iter().enumerate() {
            if drawn.iter().any(|q| q.approx_eq(p)) {
                continue;
            }
            // In the plane chart ∞ has no coordinates; lines leave the frame
            // at the top, so pin its marker to the top edge instead.
            let (x, y) = match project_point(p, chart) {
                Some(xy) => xy,
                None => (
                    (pair_index as f64 - 1.0) * 0.3 * scene.world,
                    0.94 * scene.world,
                ),
            };
            drawn.push(*p);
            scene.primitives.push(Primitive::Dot { x, y, class: "pt" });
            let tag = if which == 0 { 'x' } else { 'y' };
            scene.primitives.push(Primitive::Label {
                x,
                y,
                text: format!("{tag}{}{}", i + 1, j + 1),
            });
        }
    }
    let intersection_points = drawn.len();

    let mut vertex_count = 0;
    if let Some(vs) = vertices {
        for (k, v) in vs.iter().enumerate() {
            if let Some((x, y)) = project_point(v, chart) {
                vertex_count += 1;
                scene.primitives.push(Primitive::Dot { x, y, class: "vx" });
                scene.primitives.push(Primitive::Label {
                    x,
                    y: y - 22.0 * 2.0 * scene.world / SIZE,
                    text: format!("v{}", k + 1),
                });
            }
        }
    }

    for prim in &scene.primitives {
        debug_assert!(match prim {
            Primitive::Circle { cx, cy, r, .. } =>
                cx.is_finite() && cy.is_finite() && r.is_finite(),
            Primitive::Line { x1, y1, x2, y2, .. } =>
                x1.is_finite() && y1.is_finite() && x2.is_finite() && y2.is_finite(),
            Primitive::Polyline { points, .. } =>
                points.iter().all(|(x, y)| x.is_finite() && y.is_finite()),
            Primitive::Dot { x, y, .. } => x.is_finite() && y.is_finite(),
            Primitive::Label { x, y, .. } => x.is_finite() && y.is_finite(),
        });
    }

    Ok((
        scene.render(),
        SceneSummary {
            intersection_points,
            dual_circle: dual,
            vertices: vertex_count,
        },
    ))
}
