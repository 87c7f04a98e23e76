//! Static SVG figures: the space, balls cut down to the space, and witness points.

use roundsleek::checkers::{WitnessKind, WitnessRecord};
use roundsleek::number::{to_f64, REPORT_BITS};
use roundsleek::space::{rng_for, sample_global_with};
use roundsleek::topology::{ball_member, Answer, BallKind, BallQuery};
use roundsleek::{Error, Expr, IntervalUnion, Metric, Point, Region, Result, ToleranceConfig};
use ::svg::node::element::{Circle, ClipPath, Definitions, Group, Line, Path, Polygon, Polyline, Rectangle, Text};
use ::svg::node::element::path::Data;
use ::svg::Document;

const WIDTH: f64 = 640.0;
const PLANE_HEIGHT: f64 = 640.0;
const LINE_HEIGHT: f64 = 200.0;
const MARGIN: f64 = 32.0;
const CLOUD: usize = 600;

const REGION_FILL: &str = "#dde6f0";
const REGION_STROKE: &str = "#4a6b8a";
const BALL_FILL: &str = "#f4a261";
const BALL_STROKE: &str = "#c0581b";
const WITNESS: &str = "#b5179e";

/// Something drawn on top of the space.
#[derive(Clone, Debug)]
pub enum Overlay {
    Ball(BallQuery),
    Witness(WitnessRecord),
    Marker { point: Point, label: String },
}

impl Overlay {
    /// The overlays that explain a witness: the ball it is about plus its points.
    pub fn for_witness(w: &WitnessRecord) -> Vec<Overlay> {
        let kind = match w.kind {
            WitnessKind::MinOnOpenSet => Some(BallKind::Open),
            WitnessKind::MaxOnOpenSet | WitnessKind::SphereNotLimit => Some(BallKind::Closed),
            _ => None,
        };
        let mut out = Vec::new();
        if let Some(kind) = kind {
            let radius = Expr::Interval(w.value.lo().clone(), w.value.hi().clone());
            out.push(Overlay::Ball(BallQuery { center: w.x.clone(), radius, kind }));
        }
        out.push(Overlay::Witness(w.clone()));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Layout {
    /// Points are scalars on the usual line.
    NumberLine,
    /// Euclidean plane geometry drawn exactly from a region.
    Plane,
    /// Anything else with two readable coordinates, drawn as a point cloud.
    Cloud { projected: bool },
}

/// World-to-pixel map with a fixed viewport.
#[derive(Clone, Copy, Debug)]
struct View {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    height: f64,
}

impl View {
    fn px(&self, x: f64) -> f64 {
        round3(MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN))
    }

    fn py(&self, y: f64) -> f64 {
        round3(self.height - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (self.height - 2.0 * MARGIN))
    }

    fn scale(&self) -> f64 {
        (WIDTH - 2.0 * MARGIN) / (self.x1 - self.x0)
    }

    fn corners(&self) -> [(f64, f64); 4] {
        [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]
    }
}

fn round3(v: f64) -> f64 {
    let r = (v * 1000.0).round() / 1000.0;
    if r == 0.0 { 0.0 } else { r }
}

fn approx(e: &Expr) -> f64 {
    let b = e.bounds(REPORT_BITS);
    (to_f64(b.lo()) + to_f64(b.hi())) / 2.0
}

fn xy(p: &Point) -> Option<(f64, f64)> {
    let mut v = p.to_f64();
    if let Point::Seq { tail_base: Some(b), .. } = p {
        while v.len() < 2 {
            v.extend(b.to_f64());
        }
    }
    match v.as_slice() {
        [x] => Some((*x, 0.0)),
        [x, y, ..] => Some((*x, *y)),
        _ => None,
    }
}

fn layout(space: &dyn Metric) -> Result<Layout> {
    let unsupported = || Error::UnsupportedDimension(format!("{} does not embed in the line or the plane", space.name()));
    if space.interval_union().is_some() || space.euclidean_dim() == Some(1) {
        return Ok(Layout::NumberLine);
    }
    if space.euclidean_dim() == Some(2) || (space.region().is_some_and(|r| r.dim() == Some(2)) && euclidean_on_landmarks(space)) {
        return Ok(Layout::Plane);
    }
    if space.euclidean_dim().is_some() {
        return Err(unsupported());
    }
    let probe = space.landmarks().into_iter().next().ok_or_else(unsupported)?;
    match &probe {
        Point::Seq { .. } => Ok(Layout::Cloud { projected: true }),
        Point::Pair(..) | Point::Vector(_) if probe.to_f64().len() == 2 => Ok(Layout::Cloud { projected: false }),
        _ => Err(unsupported()),
    }
}

/// Spot check that a planar subset carries the usual distance.
fn euclidean_on_landmarks(space: &dyn Metric) -> bool {
    let marks = space.landmarks();
    let mut seen = 0;
    for a in marks.iter().take(6) {
        for b in marks.iter().take(6) {
            let (Some(pa), Some(pb)) = (xy(a), xy(b)) else { return false };
            let Ok(d) = space.distance_at(a, b, 4) else { return false };
            let e = ((pa.0 - pb.0).powi(2) + (pa.1 - pb.1).powi(2)).sqrt();
            if (approx(&d) - e).abs() > 1e-9 {
                return false;
            }
            seen += 1;
        }
    }
    seen > 0
}

/// Renders `space` with `overlays` as a standalone SVG 1.1 document.
pub fn render_svg(space: &dyn Metric, overlays: &[Overlay]) -> Result<String> {
    let layout = layout(space)?;
    let cfg = ToleranceConfig::default();
    let mut focus: Vec<(f64, f64)> = Vec::new();
    for o in overlays {
        match o {
            Overlay::Ball(q) => {
                if let Some((x, y)) = xy(&q.center) {
                    let r = approx(&q.radius);
                    focus.extend([(x - r, y - r), (x + r, y + r)]);
                }
            }
            Overlay::Witness(w) => focus.extend([&w.x, &w.y].into_iter().chain(w.z.as_ref()).filter_map(xy)),
            Overlay::Marker { point, .. } => focus.extend(xy(point)),
        }
    }
    let doc = match layout {
        Layout::NumberLine => number_line(space, overlays, focus, &cfg)?,
        Layout::Plane => plane(space, overlays, focus, &cfg),
        Layout::Cloud { projected } => cloud(space, overlays, focus, projected, &cfg),
    };
    Ok(doc.to_string())
}

fn frame(view: &View, caption: String) -> Document {
    Document::new()
        .set("xmlns", "http://www.w3.org/2000/svg")
        .set("version", "1.1")
        .set("width", WIDTH)
        .set("height", view.height)
        .set("viewBox", (0, 0, WIDTH, view.height))
        .add(Rectangle::new().set("width", WIDTH).set("height", view.height).set("fill", "white"))
        .add(
            Text::new(caption)
                .set("x", MARGIN)
                .set("y", view.height - 8.0)
                .set("font-family", "sans-serif")
                .set("font-size", 12),
        )
}

/// A square window around the focus points and the finite parts of the space.
fn window(mut pts: Vec<(f64, f64)>, height: f64, square: bool) -> View {
    if pts.is_empty() {
        pts.extend([(-2.0, -2.0), (2.0, 2.0)]);
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| pts.iter().map(pick).fold(init, f);
    let (mut x0, mut x1) = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.0));
    let (mut y0, mut y1) = (fold(f64::min, f64::INFINITY, |p| p.1), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
    let span = (x1 - x0).max(if square { y1 - y0 } else { 0.0 }).max(1.0);
    let pad = span * 0.15;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    x0 = cx - span / 2.0 - pad;
    x1 = cx + span / 2.0 + pad;
    if square {
        y0 = cy - span / 2.0 - pad;
        y1 = cy + span / 2.0 + pad;
    } else {
        y0 = -1.0;
        y1 = 1.0;
    }
    View { x0, x1, y0, y1, height }
}

fn dot(view: &View, (x, y): (f64, f64), r: f64, fill: &str, stroke: &str) -> Circle {
    Circle::new()
        .set("cx", view.px(x))
        .set("cy", view.py(y))
        .set("r", r)
        .set("fill", fill)
        .set("stroke", stroke)
        .set("stroke-width", 1.5)
}

fn label(view: &View, (x, y): (f64, f64), text: &str) -> Text {
    Text::new(text)
        .set("x", round3(view.px(x) + 6.0))
        .set("y", round3(view.py(y) - 6.0))
        .set("font-family", "sans-serif")
        .set("font-size", 13)
        .set("fill", WITNESS)
}

fn witness_marks(view: &View, w: &WitnessRecord) -> Group {
    let mut g = Group::new().set("class", "witness");
    if let Some(p) = xy(&w.x) {
        let (cx, cy) = (view.px(p.0), view.py(p.1));
        let d = Data::new().move_to((cx - 5.0, cy)).line_to((cx + 5.0, cy)).move_to((cx, cy - 5.0)).line_to((cx, cy + 5.0));
        g = g.add(Path::new().set("d", d).set("stroke", WITNESS).set("stroke-width", 2)).add(label(view, p, "x"));
    }
    if let Some(p) = xy(&w.y) {
        g = g.add(dot(view, p, 4.5, WITNESS, WITNESS)).add(label(view, p, "y"));
    }
    if let Some(p) = w.z.as_ref().and_then(xy) {
        g = g.add(dot(view, p, 4.0, "white", WITNESS)).add(label(view, p, "z"));
    }
    g
}

fn marker(view: &View, point: &Point, text: &str) -> Option<Group> {
    let p = xy(point)?;
    Some(Group::new().add(dot(view, p, 4.0, "white", WITNESS)).add(label(view, p, text)))
}

// ---------- number line ----------

#[derive(Clone, Copy, Debug)]
struct Piece {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

fn pieces(u: &IntervalUnion) -> Vec<Piece> {
    u.components()
        .iter()
        .map(|c| Piece {
            lo: c.lo.as_ref().map_or(f64::NEG_INFINITY, to_f64),
            hi: c.hi.as_ref().map_or(f64::INFINITY, to_f64),
            lo_closed: c.lo_closed,
            hi_closed: c.hi_closed,
        })
        .collect()
}

fn intersect(a: Piece, b: Piece) -> Option<Piece> {
    let (lo, lo_closed) = match a.lo.partial_cmp(&b.lo)? {
        std::cmp::Ordering::Less => (b.lo, b.lo_closed),
        std::cmp::Ordering::Greater => (a.lo, a.lo_closed),
        std::cmp::Ordering::Equal => (a.lo, a.lo_closed && b.lo_closed),
    };
    let (hi, hi_closed) = match a.hi.partial_cmp(&b.hi)? {
        std::cmp::Ordering::Less => (a.hi, a.hi_closed),
        std::cmp::Ordering::Greater => (b.hi, b.hi_closed),
        std::cmp::Ordering::Equal => (a.hi, a.hi_closed && b.hi_closed),
    };
    let keep = lo < hi || (lo == hi && lo_closed && hi_closed);
    keep.then_some(Piece { lo, hi, lo_closed, hi_closed })
}

fn draw_piece(view: &View, p: Piece, y: f64, stroke: &str, width: f64) -> Group {
    let (a, b) = (p.lo.max(view.x0), p.hi.min(view.x1));
    let mut g = Group::new();
    if a < b {
        g = g.add(
            Line::new()
                .set("x1", view.px(a))
                .set("y1", view.py(y))
                .set("x2", view.px(b))
                .set("y2", view.py(y))
                .set("stroke", stroke)
                .set("stroke-width", width),
        );
    }
    for (v, closed) in [(p.lo, p.lo_closed), (p.hi, p.hi_closed)] {
        if v.is_finite() {
            g = g.add(dot(view, (v, y), 4.0, if closed { stroke } else { "white" }, stroke));
        }
        if p.lo == p.hi {
            break;
        }
    }
    g
}

fn number_line(space: &dyn Metric, overlays: &[Overlay], mut focus: Vec<(f64, f64)>, cfg: &ToleranceConfig) -> Result<Document> {
    let domain = space.interval_union().cloned().or_else(|| match space.region() {
        Some(Region::Intervals { intervals }) => Some(intervals.clone()),
        _ => None,
    });
    let whole = Piece { lo: f64::NEG_INFINITY, hi: f64::INFINITY, lo_closed: false, hi_closed: false };
    let parts = domain.as_ref().map_or_else(|| vec![whole], pieces);
    for p in &parts {
        focus.extend([p.lo, p.hi].into_iter().filter(|v| v.is_finite()).map(|v| (v, 0.0)));
    }
    let view = window(focus, LINE_HEIGHT, false);
    let mut doc = frame(&view, space.name());
    let axis = Piece { lo: view.x0, hi: view.x1, lo_closed: false, hi_closed: false };
    doc = doc.add(
        Line::new()
            .set("x1", view.px(axis.lo))
            .set("y1", view.py(0.0))
            .set("x2", view.px(axis.hi))
            .set("y2", view.py(0.0))
            .set("stroke", "#999")
            .set("stroke-width", 1),
    );
    let mut ticks = Group::new().set("class", "ticks");
    let (t0, t1) = (view.x0.ceil() as i64, view.x1.floor() as i64);
    if t1 - t0 <= 40 {
        for t in t0..=t1 {
            let x = view.px(t as f64);
            ticks = ticks
                .add(Line::new().set("x1", x).set("y1", view.py(0.0) + 4.0).set("x2", x).set("y2", view.py(0.0) + 10.0).set("stroke", "#999"))
                .add(Text::new(t.to_string()).set("x", x - 3.0).set("y", view.py(0.0) + 24.0).set("font-family", "sans-serif").set("font-size", 11));
        }
    }
    doc = doc.add(ticks);
    let mut region = Group::new().set("class", "space");
    for p in &parts {
        region = region.add(draw_piece(&view, *p, 0.0, REGION_STROKE, 4.0));
    }
    doc = doc.add(region);
    let euclid = space.euclidean_dim() == Some(1);
    for (i, o) in overlays.iter().enumerate() {
        match o {
            Overlay::Ball(q) => {
                let lift = 0.25 + 0.15 * (i % 3) as f64;
                let mut g = Group::new().set("class", "ball");
                let (Some((c, _)), true) = (xy(&q.center), euclid) else {
                    g = g.add(sampled_ball_on_line(space, q, &view, lift, cfg));
                    doc = doc.add(g);
                    continue;
                };
                let r = approx(&q.radius);
                let closed = q.kind == BallKind::Closed;
                let ball = Piece { lo: c - r, hi: c + r, lo_closed: closed, hi_closed: closed };
                for p in &parts {
                    if let Some(cut) = intersect(*p, ball) {
                        g = g.add(draw_piece(&view, cut, lift, BALL_STROKE, 3.0));
                    }
                }
                doc = doc.add(g);
            }
            Overlay::Witness(w) => doc = doc.add(witness_marks(&view, w)),
            Overlay::Marker { point, label } => {
                if let Some(m) = marker(&view, point, label) {
                    doc = doc.add(m);
                }
            }
        }
    }
    Ok(doc)
}

/// Ball of a non-Euclidean metric on the line: certified members on a fine grid.
fn sampled_ball_on_line(space: &dyn Metric, q: &BallQuery, view: &View, lift: f64, cfg: &ToleranceConfig) -> Group {
    let mut g = Group::new();
    let n = 600;
    for i in 0..=n {
        let x = view.x0 + (view.x1 - view.x0) * i as f64 / n as f64;
        let p = Point::Scalar(roundsleek::number::from_f64_grid(x, 1 << 12));
        if space.contains(&p) != Ok(true) {
            continue;
        }
        if ball_member(space, q, &p, cfg).map(|a| a.verdict) == Ok(Answer::Yes) {
            g = g.add(
                Rectangle::new()
                    .set("x", view.px(x) - 0.5)
                    .set("y", view.py(lift) - 1.5)
                    .set("width", 1)
                    .set("height", 3)
                    .set("fill", BALL_STROKE),
            );
        }
    }
    g
}

// ---------- plane ----------

/// Area pieces of a planar region, as polygons and circles in world coordinates.
enum Shape {
    Poly(Vec<(f64, f64)>),
    Disk { c: (f64, f64), r: f64 },
}

/// Clips a convex polygon to `n . z >= k`.
fn clip_half(poly: &[(f64, f64)], n: (f64, f64), k: f64) -> Vec<(f64, f64)> {
    let side = |p: &(f64, f64)| n.0 * p.0 + n.1 * p.1 - k;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (sa, sb) = (side(&a), side(&b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            let t = sa / (sa - sb);
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

fn v2f(v: &[roundsleek::Rational]) -> (f64, f64) {
    (to_f64(&v[0]), to_f64(&v[1]))
}

fn areas(region: &Region, view: &View) -> Vec<Shape> {
    let full = view.corners().to_vec();
    match region {
        Region::FullSpace { dim: 2 } => vec![Shape::Poly(full)],
        Region::Disk { center, radius, .. } => vec![Shape::Disk { c: v2f(center), r: to_f64(radius) }],
        Region::HalfPlane { normal, offset, .. } => {
            let p = clip_half(&full, v2f(normal), to_f64(offset));
            if p.is_empty() { vec![] } else { vec![Shape::Poly(p)] }
        }
        Region::ProductRegion { factors } if factors.len() == 2 => {
            let (Region::Intervals { intervals: a }, Region::Intervals { intervals: b }) = (&factors[0], &factors[1]) else {
                return vec![];
            };
            let mut out = Vec::new();
            for pa in pieces(a) {
                for pb in pieces(b) {
                    let (x0, x1) = (pa.lo.max(view.x0), pa.hi.min(view.x1));
                    let (y0, y1) = (pb.lo.max(view.y0), pb.hi.min(view.y1));
                    if x0 < x1 && y0 < y1 {
                        out.push(Shape::Poly(vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)]));
                    }
                }
            }
            out
        }
        Region::Union { members } => members.iter().flat_map(|m| areas(m, view)).collect(),
        Region::Intersection { members } => {
            let mut poly = full;
            for m in members {
                let Some(clip) = convex_outline(m, view) else { return vec![] };
                for i in 0..clip.len() {
                    let (a, b) = (clip[i], clip[(i + 1) % clip.len()]);
                    // keep the left side of each counterclockwise edge
                    let n = (a.1 - b.1, b.0 - a.0);
                    poly = clip_half(&poly, n, n.0 * a.0 + n.1 * a.1);
                }
            }
            if poly.len() < 3 { vec![] } else { vec![Shape::Poly(poly)] }
        }
        _ => vec![],
    }
}

const DISK_SIDES: usize = 256;

/// Counterclockwise convex polygon covering the region inside the view.
fn convex_outline(region: &Region, view: &View) -> Option<Vec<(f64, f64)>> {
    match areas(region, view).as_slice() {
        [Shape::Poly(p)] => Some(p.clone()),
        [Shape::Disk { c, r }] => Some(
            (0..DISK_SIDES)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / DISK_SIDES as f64;
                    (c.0 + r * t.cos(), c.1 + r * t.sin())
                })
                .collect(),
        ),
        _ => None,
    }
}

/// Curve pieces as polylines, plus isolated points.
fn curves(region: &Region, view: &View) -> (Vec<Vec<(f64, f64)>>, Vec<(f64, f64)>) {
    let mut lines = Vec::new();
    let mut points = Vec::new();
    match region {
        Region::Line { point, direction } => {
            let (p, d) = (v2f(point), v2f(direction));
            if let Some((a, b)) = clip_param(p, d, f64::NEG_INFINITY, f64::INFINITY, view) {
                lines.push(vec![(p.0 + a * d.0, p.1 + a * d.1), (p.0 + b * d.0, p.1 + b * d.1)]);
            }
        }
        Region::Segment { p, q, .. } => lines.push(vec![v2f(p), v2f(q)]),
        Region::CircleArc { .. } => lines.extend(arc_runs(region, |_| true)),
        Region::Points { points: ps } => points.extend(ps.iter().filter_map(xy)),
        Region::Union { members } => {
            for m in members {
                let (l, p) = curves(m, view);
                lines.extend(l);
                points.extend(p);
            }
        }
        _ => {}
    }
    (lines, points)
}

/// Parameter range of `p + t d` inside the view, within `[lo, hi]`.
fn clip_param(p: (f64, f64), d: (f64, f64), mut lo: f64, mut hi: f64, view: &View) -> Option<(f64, f64)> {
    for (pc, dc, a, b) in [(p.0, d.0, view.x0, view.x1), (p.1, d.1, view.y0, view.y1)] {
        if dc == 0.0 {
            if pc < a || pc > b {
                return None;
            }
            continue;
        }
        let (t0, t1) = ((a - pc) / dc, (b - pc) / dc);
        lo = lo.max(t0.min(t1));
        hi = hi.min(t0.max(t1));
    }
    (lo <= hi).then_some((lo, hi))
}

const ARC_STEPS: usize = 720;

/// Runs of arc sample points accepted by `keep`.
fn arc_runs(region: &Region, keep: impl Fn((f64, f64)) -> bool) -> Vec<Vec<(f64, f64)>> {
    let Region::CircleArc { center, radius, from, to, .. } = region else { return vec![] };
    let (c, r) = (v2f(center), to_f64(radius));
    let (start, sweep) = match (from, to) {
        (Some(u), Some(v)) => {
            let (a, b) = (v2f(u).1.atan2(v2f(u).0), v2f(v).1.atan2(v2f(v).0));
            let mut s = b - a;
            if s <= 0.0 {
                s += std::f64::consts::TAU;
            }
            (a, s)
        }
        _ => (0.0, std::f64::consts::TAU),
    };
    let mut runs = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    for i in 0..=ARC_STEPS {
        let t = start + sweep * i as f64 / ARC_STEPS as f64;
        let p = (c.0 + r * t.cos(), c.1 + r * t.sin());
        if keep(p) {
            cur.push(p);
        } else if !cur.is_empty() {
            runs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs
}

fn shape_node(view: &View, s: &Shape) -> Box<dyn ::svg::Node> {
    match s {
        Shape::Poly(p) => Box::new(Polygon::new().set("points", poly_points(view, p))),
        Shape::Disk { c, r } => Box::new(
            Circle::new().set("cx", view.px(c.0)).set("cy", view.py(c.1)).set("r", round3(r * view.scale())),
        ),
    }
}

fn poly_points(view: &View, p: &[(f64, f64)]) -> String {
    p.iter().map(|(x, y)| format!("{},{}", view.px(*x), view.py(*y))).collect::<Vec<_>>().join(" ")
}

fn polyline(view: &View, p: &[(f64, f64)], stroke: &str, width: f64) -> Polyline {
    Polyline::new()
        .set("points", poly_points(view, p))
        .set("fill", "none")
        .set("stroke", stroke)
        .set("stroke-width", width)
        .set("stroke-linecap", "round")
}

/// Extent of the finite parts of a region.
fn region_focus(region: &Region, out: &mut Vec<(f64, f64)>) {
    match region {
        Region::Disk { center, radius, .. } | Region::CircleArc { center, radius, .. } => {
            let (c, r) = (v2f(center), to_f64(radius));
            out.extend([(c.0 - r, c.1 - r), (c.0 + r, c.1 + r)]);
        }
        Region::Segment { p, q, .. } => out.extend([v2f(p), v2f(q)]),
        Region::Line { point, .. } => out.push(v2f(point)),
        Region::HalfPlane { normal, offset, .. } => {
            let (n, k) = (v2f(normal), to_f64(offset));
            let nn = n.0 * n.0 + n.1 * n.1;
            out.push((n.0 * k / nn, n.1 * k / nn));
        }
        Region::ProductRegion { factors } => {
            let ends = |f: &Region| match f {
                Region::Intervals { intervals } => {
                    pieces(intervals).iter().flat_map(|p| [p.lo, p.hi]).filter(|v| v.is_finite()).collect()
                }
                _ => vec![],
            };
            if let [a, b] = factors.as_slice() {
                let (xs, ys): (Vec<f64>, Vec<f64>) = (ends(a), ends(b));
                for x in xs.iter().chain([0.0].iter()) {
                    for y in ys.iter().chain([0.0].iter()) {
                        out.push((*x, *y));
                    }
                }
            }
        }
        Region::Points { points } => out.extend(points.iter().filter_map(xy)),
        Region::Union { members } | Region::Intersection { members } => {
            for m in members {
                region_focus(m, out);
            }
        }
        _ => {}
    }
}

fn plane(space: &dyn Metric, overlays: &[Overlay], mut focus: Vec<(f64, f64)>, cfg: &ToleranceConfig) -> Document {
    let full = Region::FullSpace { dim: 2 };
    let region = space.region().unwrap_or(&full);
    region_focus(region, &mut focus);
    focus.extend(space.landmarks().iter().filter_map(xy));
    let view = window(focus, PLANE_HEIGHT, true);
    let mut doc = frame(&view, space.name());
    let region_areas = areas(region, &view);
    let (lines, points) = curves(region, &view);
    let mut defs = Definitions::new();
    if !region_areas.is_empty() {
        let mut clip = ClipPath::new().set("id", "space-area");
        for s in &region_areas {
            clip = clip.add(shape_node(&view, s));
        }
        defs = defs.add(clip);
    }
    doc = doc.add(defs);
    let mut g = Group::new().set("class", "space");
    for s in &region_areas {
        g = g.add(Group::new().set("fill", REGION_FILL).set("stroke", REGION_STROKE).add(shape_node(&view, s)));
    }
    for l in &lines {
        g = g.add(polyline(&view, l, REGION_STROKE, 3.0));
    }
    for p in &points {
        g = g.add(dot(&view, *p, 3.5, REGION_STROKE, REGION_STROKE));
    }
    doc = doc.add(g);
    for o in overlays {
        match o {
            Overlay::Ball(q) => doc = doc.add(plane_ball(space, region, q, &view, !region_areas.is_empty(), cfg)),
            Overlay::Witness(w) => doc = doc.add(witness_marks(&view, w)),
            Overlay::Marker { point, label } => {
                if let Some(m) = marker(&view, point, label) {
                    doc = doc.add(m);
                }
            }
        }
    }
    doc
}

/// `B(c, r)` intersected with the region: clipped disk on areas, cut-down curves, kept points.
fn plane_ball(space: &dyn Metric, region: &Region, q: &BallQuery, view: &View, has_area: bool, cfg: &ToleranceConfig) -> Group {
    let mut g = Group::new().set("class", "ball");
    let Some(c) = xy(&q.center) else { return g };
    let r = approx(&q.radius);
    let closed = q.kind == BallKind::Closed;
    let outline = Circle::new()
        .set("cx", view.px(c.0))
        .set("cy", view.py(c.1))
        .set("r", round3(r * view.scale()))
        .set("fill", "none")
        .set("stroke", BALL_STROKE)
        .set("stroke-width", 1)
        .set("stroke-dasharray", if closed { "none" } else { "4 3" });
    if has_area {
        g = g.add(
            Circle::new()
                .set("cx", view.px(c.0))
                .set("cy", view.py(c.1))
                .set("r", round3(r * view.scale()))
                .set("fill", BALL_FILL)
                .set("fill-opacity", 0.55)
                .set("clip-path", "url(#space-area)"),
        );
    }
    g = g.add(outline);
    for (lo, hi) in line_cuts(region, c, r, closed, view) {
        if (hi.0 - lo.0).hypot(hi.1 - lo.1) < 1e-12 {
            g = g.add(dot(view, lo, 4.0, BALL_STROKE, BALL_STROKE));
        } else {
            g = g.add(polyline(view, &[lo, hi], BALL_STROKE, 5.0));
        }
    }
    let inside = |p: (f64, f64)| {
        let d = (p.0 - c.0).hypot(p.1 - c.1);
        if closed { d <= r + 1e-12 } else { d < r - 1e-12 }
    };
    for arc in arcs(region) {
        for run in arc_runs(arc, inside) {
            g = g.add(polyline(view, &run, BALL_STROKE, 5.0));
        }
    }
    for p in region_points(region) {
        if ball_member(space, q, p, cfg).map(|a| a.verdict) == Ok(Answer::Yes) {
            if let Some(w) = xy(p) {
                g = g.add(dot(view, w, 4.5, BALL_STROKE, BALL_STROKE));
            }
        }
    }
    g
}

fn arcs(region: &Region) -> Vec<&Region> {
    match region {
        Region::CircleArc { .. } => vec![region],
        Region::Union { members } => members.iter().flat_map(arcs).collect(),
        _ => vec![],
    }
}

fn region_points(region: &Region) -> Vec<&Point> {
    match region {
        Region::Points { points } => points.iter().collect(),
        Region::Union { members } => members.iter().flat_map(region_points).collect(),
        _ => vec![],
    }
}

/// Pieces of lines and segments inside the disk; a tangent closed ball gives a single point.
fn line_cuts(region: &Region, c: (f64, f64), r: f64, closed: bool, view: &View) -> Vec<((f64, f64), (f64, f64))> {
    let cut = |p: (f64, f64), d: (f64, f64), lo: f64, hi: f64, seg_closed: bool| {
        // |p + t d - c|^2 = r^2
        let w = (p.0 - c.0, p.1 - c.1);
        let a = d.0 * d.0 + d.1 * d.1;
        let b = 2.0 * (w.0 * d.0 + w.1 * d.1);
        let k = w.0 * w.0 + w.1 * w.1 - r * r;
        let disc = b * b - 4.0 * a * k;
        let tangent = disc.abs() <= 1e-12 * (b * b).max(1.0);
        if disc < 0.0 && !tangent {
            return None;
        }
        if tangent && !closed {
            return None;
        }
        let s = disc.max(0.0).sqrt();
        let (t0, t1) = ((-b - s) / (2.0 * a), (-b + s) / (2.0 * a));
        let (t0, t1) = (t0.max(lo), t1.min(hi));
        let ok = t0 < t1 || (t0 == t1 && (seg_closed || (t0 > lo && t0 < hi)));
        let (t0, t1) = clip_param(p, d, t0, t1, view).filter(|_| ok)?;
        Some(((p.0 + t0 * d.0, p.1 + t0 * d.1), (p.0 + t1 * d.0, p.1 + t1 * d.1)))
    };
    match region {
        Region::Line { point, direction } => {
            cut(v2f(point), v2f(direction), f64::NEG_INFINITY, f64::INFINITY, true).into_iter().collect()
        }
        Region::Segment { p, q, closed: sc } => {
            let (a, b) = (v2f(p), v2f(q));
            cut(a, (b.0 - a.0, b.1 - a.1), 0.0, 1.0, *sc).into_iter().collect()
        }
        Region::Union { members } => members.iter().flat_map(|m| line_cuts(m, c, r, closed, view)).collect(),
        _ => vec![],
    }
}

// ---------- point cloud ----------

fn cloud(space: &dyn Metric, overlays: &[Overlay], mut focus: Vec<(f64, f64)>, projected: bool, cfg: &ToleranceConfig) -> Document {
    let mut pts = space.landmarks();
    pts.extend(sample_global_with(space, CLOUD, &mut rng_for(0, 90)));
    focus.extend(pts.iter().filter_map(xy));
    let view = window(focus, PLANE_HEIGHT, true);
    let caption = if projected {
        format!("{} (projection onto the first two coordinates)", space.name())
    } else {
        format!("{} (sampled points)", space.name())
    };
    let mut doc = frame(&view, caption);
    let mut g = Group::new().set("class", "space");
    for p in pts.iter().filter_map(xy) {
        if p.0 >= view.x0 && p.0 <= view.x1 && p.1 >= view.y0 && p.1 <= view.y1 {
            g = g.add(Circle::new().set("cx", view.px(p.0)).set("cy", view.py(p.1)).set("r", 1.5).set("fill", REGION_STROKE));
        }
    }
    doc = doc.add(g);
    for o in overlays {
        match o {
            Overlay::Ball(q) => {
                let mut b = Group::new().set("class", "ball");
                for p in &pts {
                    if ball_member(space, q, p, cfg).map(|a| a.verdict) == Ok(Answer::Yes) {
                        if let Some(w) = xy(p) {
                            b = b.add(Circle::new().set("cx", view.px(w.0)).set("cy", view.py(w.1)).set("r", 3).set("fill", BALL_STROKE));
                        }
                    }
                }
                doc = doc.add(b);
            }
            Overlay::Witness(w) => doc = doc.add(witness_marks(&view, w)),
            Overlay::Marker { point, label } => {
                if let Some(m) = marker(&view, point, label) {
                    doc = doc.add(m);
                }
            }
        }
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use roundsleek::gallery::gallery_space;
    use roundsleek::number::{int, rat};
    use roundsleek::space::{subspace, Euclidean};
    use roundsleek::Interval;

    fn ball(center: Point, r: roundsleek::Rational, kind: BallKind) -> Overlay {
        Overlay::Ball(BallQuery::new(center, Expr::rat(r), kind).unwrap())
    }

    #[test]
    fn two_lines_unit_ball_is_a_segment_and_a_point() {
        let space = gallery_space("two-lines").unwrap().space;
        let o = ball(Point::vec2(int(0), int(0)), int(1), BallKind::Closed);
        let svg = render_svg(&*space, &[o]).unwrap();
        let ball_part = svg.split("class=\"ball\"").nth(1).unwrap();
        assert_eq!(ball_part.matches("<polyline").count(), 1);
        assert!(ball_part.contains("<circle"));
        let open = ball(Point::vec2(int(0), int(0)), int(1), BallKind::Open);
        let svg = render_svg(&*space, &[open]).unwrap();
        let ball_part = svg.split("class=\"ball\"").nth(1).unwrap();
        // only the dashed outline remains besides the segment
        assert_eq!(ball_part.matches("<circle").count(), 1);
    }

    #[test]
    fn number_line_shows_the_gap() {
        let u = IntervalUnion::new([Interval::closed(int(0), int(1)), Interval::closed(int(2), int(3))]);
        let space = subspace(Euclidean::new(1), Region::intervals(u)).unwrap();
        let svg = render_svg(&space, &[ball(Point::Scalar(int(1)), int(1), BallKind::Open)]).unwrap();
        let space_part = svg.split("class=\"space\"").nth(1).unwrap();
        assert_eq!(space_part.split("class=\"ball\"").next().unwrap().matches("<line").count(), 2);
    }

    #[test]
    fn closed_disk_with_inner_ball() {
        let space = gallery_space("closed-disk").unwrap().space;
        let svg = render_svg(&*space, &[ball(Point::vec2(int(0), int(0)), rat(1, 2), BallKind::Open)]).unwrap();
        assert!(svg.contains("clip-path=\"url(#space-area)\""));
        assert_eq!(svg, render_svg(&*space, &[ball(Point::vec2(int(0), int(0)), rat(1, 2), BallKind::Open)]).unwrap());
    }

    #[test]
    fn quadrant_sleek_witness_figure() {
        let space = gallery_space("quadrant").unwrap().space;
        let w = roundsleek::checkers::check_sleek(&*space, &ToleranceConfig::default()).witness.unwrap();
        let svg = render_svg(&*space, &Overlay::for_witness(&w)).unwrap();
        let space_part = svg.split("class=\"space\"").nth(1).unwrap();
        assert!(space_part.split("class=\"ball\"").next().unwrap().contains("<polygon"));
        assert!(svg.contains("class=\"witness\""));
    }

    #[test]
    fn projection_and_unsupported() {
        let product = gallery_space("product-D").unwrap().space;
        assert!(render_svg(&*product, &[]).unwrap().contains("projection"));
        let r3 = Euclidean::new(3);
        assert!(matches!(render_svg(&*r3, &[]), Err(Error::UnsupportedDimension(_))));
    }
}
