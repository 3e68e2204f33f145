//! SVG pictures of planar `Γ_y` regions.
//!
//! All geometry is clipped exactly over the rationals; coordinates are
//! rounded to integer user units only when written out.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use coneval_core::arrangement::CellDecomposition;
use coneval_core::linalg::rank;
use coneval_core::{AffineCondition, Cone, QMatrix, QVector, Rational, Relation};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::CliError;

type P = (Rational, Rational);

#[derive(Clone, Debug, Deserialize)]
pub struct Palette {
    pub canvas: u32,
    pub background: String,
    pub frame: String,
    pub cone_fill: String,
    pub cone_edge: String,
    pub cone_edge_width: u32,
    pub region_positive: String,
    pub region_negative: String,
    pub included_edge: String,
    pub included_edge_width: u32,
    pub wall: String,
    pub wall_width: u32,
    pub wall_dash: String,
    pub mark: String,
    pub mark_radius: u32,
    pub font: String,
    pub font_size: u32,
    pub circle: String,
    pub circle_width: u32,
}

impl Default for Palette {
    fn default() -> Self {
        toml::from_str(include_str!("../palette.toml")).expect("bundled palette parses")
    }
}

/// The visible rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViewBox {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Default for ViewBox {
    fn default() -> Self {
        ViewBox { x0: Rational::integer(-4), x1: Rational::integer(4), y0: Rational::integer(-4), y1: Rational::integer(4) }
    }
}

impl ViewBox {
    /// `XMIN,XMAX,YMIN,YMAX`.
    pub fn parse(s: &str) -> Result<ViewBox, CliError> {
        let parts: Vec<Rational> = s
            .split(',')
            .map(|p| p.parse::<Rational>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(format!("--box {s:?}: {e}")))?;
        match <[Rational; 4]>::try_from(parts) {
            Ok([x0, x1, y0, y1]) if x0 < x1 && y0 < y1 => Ok(ViewBox { x0, x1, y0, y1 }),
            _ => Err(CliError::Usage(format!("--box {s:?}: expected XMIN,XMAX,YMIN,YMAX with XMIN < XMAX and YMIN < YMAX"))),
        }
    }

    fn corners(&self) -> Vec<P> {
        vec![
            (self.x0.clone(), self.y0.clone()),
            (self.x1.clone(), self.y0.clone()),
            (self.x1.clone(), self.y1.clone()),
            (self.x0.clone(), self.y1.clone()),
        ]
    }
}

pub struct Options {
    pub view: ViewBox,
    /// Draw the ball over `[0, y]` that contains the support.
    pub circle: bool,
    pub palette: Palette,
}

fn value(n: &QVector, c: &Rational, p: &P) -> Rational {
    &n[0] * &p.0 + &n[1] * &p.1 - c
}

/// Sutherland–Hodgman step keeping `<n, p> - c >= 0`.
fn clip(poly: &[P], n: &QVector, c: &Rational) -> Vec<P> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let prev = &poly[(i + poly.len() - 1) % poly.len()];
        let cur = &poly[i];
        let (vp, vc) = (value(n, c, prev), value(n, c, cur));
        let crossing = || {
            let t = &vp / &(&vp - &vc);
            (&prev.0 + &(&t * &(&cur.0 - &prev.0)), &prev.1 + &(&t * &(&cur.1 - &prev.1)))
        };
        if !vc.is_negative() {
            if vp.is_negative() {
                out.push(crossing());
            }
            out.push(cur.clone());
        } else if vp.is_positive() {
            out.push(crossing());
        }
    }
    out
}

fn clip_condition(poly: Vec<P>, cond: &AffineCondition) -> Vec<P> {
    let (n, c) = (cond.normal(), cond.offset());
    let poly = clip(&poly, n, c);
    match cond.relation() {
        Relation::Eq => clip(&poly, &n.neg(), &-c),
        Relation::Ge | Relation::Gt => poly,
    }
}

enum Shape {
    Point(P),
    Segment(P, P),
    Polygon(Vec<P>),
}

fn cross(o: &P, a: &P, b: &P) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Drops repeated and collinear vertices of a convex polygon and
/// classifies what is left.
fn shape(poly: Vec<P>) -> Option<Shape> {
    let mut pts: Vec<P> = Vec::new();
    for p in poly {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let lo = pts.iter().min()?.clone();
    if pts.iter().all(|p| *p == lo) {
        return Some(Shape::Point(lo));
    }
    let hi = pts.iter().max()?.clone();
    if pts.iter().all(|p| cross(&lo, &hi, p).is_zero()) {
        return Some(Shape::Segment(lo, hi));
    }
    let n = pts.len();
    let keep: Vec<P> =
        (0..n).filter(|&i| !cross(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]).is_zero()).map(|i| pts[i].clone()).collect();
    Some(Shape::Polygon(keep))
}

fn clip_all<'a>(view: &ViewBox, conds: impl IntoIterator<Item = &'a AffineCondition>) -> Option<Shape> {
    let mut poly = view.corners();
    for c in conds {
        poly = clip_condition(poly, c);
        if poly.is_empty() {
            return None;
        }
    }
    shape(poly)
}

fn round(r: &Rational) -> BigInt {
    (r + &Rational::new(1, 2)).floor()
}

struct Canvas {
    view: ViewBox,
    scale: Rational,
    width: BigInt,
    height: BigInt,
}

impl Canvas {
    fn new(view: &ViewBox, units: u32) -> Canvas {
        let (w, h) = (&view.x1 - &view.x0, &view.y1 - &view.y0);
        let long = if w > h { w.clone() } else { h.clone() };
        let scale = &Rational::integer(i64::from(units.max(1))) / &long;
        let (width, height) = (round(&(&w * &scale)), round(&(&h * &scale)));
        Canvas { view: view.clone(), scale, width, height }
    }

    fn px(&self, p: &P) -> (BigInt, BigInt) {
        (round(&(&(&p.0 - &self.view.x0) * &self.scale)), round(&(&(&self.view.y1 - &p.1) * &self.scale)))
    }

    fn points(&self, poly: &[P]) -> String {
        poly.iter()
            .map(|p| {
                let (x, y) = self.px(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn line(&self, a: &P, b: &P, attrs: &str) -> String {
        let ((x1, y1), (x2, y2)) = (self.px(a), self.px(b));
        format!("<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {attrs}/>")
    }

    /// Length `r` in user units, rounded; `r` is given by its square.
    fn length_from_square(&self, r_sq: &Rational) -> BigInt {
        // floor(sqrt(4 R)) = t gives round(sqrt(R)) = floor((t + 1) / 2)
        let t = (&(r_sq * &self.scale) * &(&self.scale * &Rational::integer(4))).floor().sqrt();
        (t + 1u32) / 2u32
    }
}

fn pt(v: &QVector) -> P {
    (v[0].clone(), v[1].clone())
}

/// A far point along `dir` from the origin, outside the view box.
fn far_along(view: &ViewBox, dir: &QVector) -> P {
    let m = [&view.x0, &view.x1, &view.y0, &view.y1].into_iter().map(Rational::abs).max().expect("four") + Rational::one();
    let big = if dir[0].abs() > dir[1].abs() { dir[0].abs() } else { dir[1].abs() };
    pt(&dir.scale(&(&m / &big)))
}

fn dimension(conds: &[AffineCondition]) -> usize {
    let eqs: Vec<QVector> = conds.iter().filter(|c| c.relation() == Relation::Eq).map(|c| c.normal().clone()).collect();
    2 - rank(&QMatrix::new(2, eqs).expect("planar normals"))
}

fn midpoint(a: &P, b: &P) -> P {
    let half = Rational::new(1, 2);
    (&(&a.0 + &b.0) * &half, &(&a.1 + &b.1) * &half)
}

/// Renders the nonzero cells `region` of `Γ_y([cone])` in the visual
/// grammar of the two introductory pictures: the cone lightly shaded with
/// solid edges, the region filled, walls bounding it dashed, and the
/// points 0 and y marked.
pub fn render(cone: &Cone, y: &QVector, region: &CellDecomposition, opts: &Options) -> Result<String, CliError> {
    if cone.dim() != 2 || y.dim() != 2 || region.dim != 2 {
        return Err(CliError::Input(format!("SVG output needs dimension 2, got {}", cone.dim())));
    }
    let pal = &opts.palette;
    let view = &opts.view;
    let canvas = Canvas::new(view, pal.canvas);
    let (w, h) = (&canvas.width, &canvas.height);
    let mut s = String::new();
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">");
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"{}\" stroke=\"{}\"/>", pal.background, pal.frame);

    let hull: Vec<AffineCondition> = cone
        .hrep()
        .into_iter()
        .map(|hs| AffineCondition::halfspace(hs.normal().clone()))
        .collect();
    if let Some(Shape::Polygon(poly)) = clip_all(view, &hull) {
        let _ = writeln!(s, "<polygon class=\"cone\" points=\"{}\" fill=\"{}\" stroke=\"none\"/>", canvas.points(&poly), pal.cone_fill);
    }

    let mut faces = Vec::new();
    let mut edges = Vec::new();
    let mut vertices = Vec::new();
    for cell in &region.cells {
        let conds = cell.conditions.conditions();
        let Some(sh) = clip_all(view, conds) else { continue };
        match (dimension(conds), sh) {
            (2, Shape::Polygon(poly)) => faces.push((poly, &cell.value)),
            (1, Shape::Segment(a, b)) => edges.push((a, b, &cell.value)),
            (0, Shape::Point(p)) => vertices.push((p, &cell.value)),
            _ => {}
        }
    }

    for (poly, v) in &faces {
        let fill = if v.is_positive() { &pal.region_positive } else { &pal.region_negative };
        let _ = writeln!(
            s,
            "<polygon class=\"region\" points=\"{}\" fill=\"{fill}\" stroke=\"none\"><title>{v}</title></polygon>",
            canvas.points(poly)
        );
    }

    // region boundary on a wall, where the closure does not belong to the region
    let mut boundary: BTreeMap<(P, P), usize> = BTreeMap::new();
    for (poly, _) in &faces {
        for i in 0..poly.len() {
            let (a, b) = (poly[i].clone(), poly[(i + 1) % poly.len()].clone());
            *boundary.entry(if a < b { (a, b) } else { (b, a) }).or_default() += 1;
        }
    }
    let on_wall = |a: &P, b: &P| {
        region.hyperplanes.iter().any(|hp| value(hp.normal(), hp.offset(), a).is_zero() && value(hp.normal(), hp.offset(), b).is_zero())
    };
    let included = |m: &P| {
        let q = QVector::new(vec![m.0.clone(), m.1.clone()]);
        region.cells.iter().any(|c| dimension(c.conditions.conditions()) == 1 && c.conditions.contains(&q))
    };
    let dash = format!("stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"{}\"", pal.wall, pal.wall_width, pal.wall_dash);
    for ((a, b), n) in &boundary {
        if *n == 1 && on_wall(a, b) && !included(&midpoint(a, b)) {
            let _ = writeln!(s, "{}", canvas.line(a, b, &format!("class=\"wall\" {dash}")));
        }
    }

    let solid = format!("class=\"cone-edge\" stroke=\"{}\" stroke-width=\"{}\"", pal.cone_edge, pal.cone_edge_width);
    let origin = (Rational::zero(), Rational::zero());
    let mut dirs: Vec<QVector> = cone.rays().to_vec();
    for l in cone.lineality().rows() {
        dirs.push(l.clone());
        dirs.push(l.neg());
    }
    for d in &dirs {
        let far = far_along(view, d);
        let seg = clip_all(view, &segment_conditions(&origin, &far));
        match seg {
            Some(Shape::Segment(a, b)) => {
                let _ = writeln!(s, "{}", canvas.line(&a, &b, &solid));
            }
            Some(Shape::Point(_)) | Some(Shape::Polygon(_)) | None => {}
        }
    }

    let thick = format!(
        "class=\"included\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\"",
        pal.included_edge, pal.included_edge_width
    );
    for (a, b, v) in &edges {
        let (x1, y1) = canvas.px(a);
        let (x2, y2) = canvas.px(b);
        let _ = writeln!(s, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {thick}><title>{v}</title></line>");
    }
    for (p, v) in &vertices {
        let (x, y) = canvas.px(p);
        let _ = writeln!(
            s,
            "<circle class=\"included\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{}\"><title>{v}</title></circle>",
            pal.included_edge_width,
            pal.included_edge
        );
    }

    if opts.circle {
        let (cx, cy) = canvas.px(&pt(&y.scale(&Rational::new(1, 2))));
        let r = canvas.length_from_square(&(&y.norm_sq() * &Rational::new(1, 4)));
        let _ = writeln!(
            s,
            "<circle class=\"ball\" cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
            pal.circle, pal.circle_width
        );
    }

    let gap = pal.mark_radius * 2;
    for (p, label, anchor, dx) in [(&origin, "0", "end", -i64::from(gap)), (&pt(y), "y", "start", i64::from(gap))] {
        let (x, yy) = canvas.px(p);
        let _ = writeln!(s, "<circle class=\"mark\" cx=\"{x}\" cy=\"{yy}\" r=\"{}\" fill=\"{}\"/>", pal.mark_radius, pal.mark);
        let style = if label == "y" { " font-style=\"italic\"" } else { "" };
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\" font-family=\"{}\" font-size=\"{}\"{style} fill=\"{}\">{label}</text>",
            &x + dx,
            &yy - i64::from(gap),
            pal.font,
            pal.font_size,
            pal.mark
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Conditions cutting out the segment `[a, b]` (with `a != b`).
fn segment_conditions(a: &P, b: &P) -> Vec<AffineCondition> {
    let d = QVector::new(vec![&b.0 - &a.0, &b.1 - &a.1]);
    let n = QVector::new(vec![-&d[1], d[0].clone()]);
    let on_line = AffineCondition::new(n.clone(), value(&n, &Rational::zero(), a), Relation::Eq);
    let after_a = AffineCondition::new(d.clone(), value(&d, &Rational::zero(), a), Relation::Ge);
    let before_b = AffineCondition::new(d.neg(), -value(&d, &Rational::zero(), b), Relation::Ge);
    vec![on_line, after_a, before_b]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> P {
        (Rational::integer(x), Rational::integer(y))
    }

    #[test]
    fn bundled_palette_parses() {
        assert_eq!(Palette::default().canvas, 800);
    }

    #[test]
    fn view_boxes() {
        assert_eq!(ViewBox::parse("-4,4,-4,4").unwrap(), ViewBox::default());
        assert!(ViewBox::parse("1,0,0,1").is_err());
        assert!(ViewBox::parse("0,1,0").is_err());
        assert!(ViewBox::parse("0,1/2,0,x").is_err());
    }

    #[test]
    fn clipping_is_exact() {
        let view = ViewBox::default();
        let diag = AffineCondition::new(QVector::from_ints(&[1, -1]), Rational::zero(), Relation::Gt);
        match clip_all(&view, [&diag]) {
            Some(Shape::Polygon(poly)) => assert_eq!(poly.len(), 3),
            _ => panic!("triangle expected"),
        }
        let line = AffineCondition::new(QVector::from_ints(&[1, -1]), Rational::zero(), Relation::Eq);
        match clip_all(&view, [&line]) {
            Some(Shape::Segment(a, b)) => assert_eq!((a, b), (p(-4, -4), p(4, 4))),
            _ => panic!("segment expected"),
        }
        let away = AffineCondition::new(QVector::from_ints(&[1, 0]), Rational::integer(9), Relation::Ge);
        assert!(clip_all(&view, [&away]).is_none());
        match clip_all(&view, &segment_conditions(&p(0, 0), &far_along(&view, &QVector::from_ints(&[1, 2])))) {
            Some(Shape::Segment(a, b)) => assert_eq!((a, b), (p(0, 0), p(2, 4))),
            _ => panic!("segment expected"),
        }
    }

    #[test]
    fn canvas_rounding() {
        let c = Canvas::new(&ViewBox::default(), 800);
        assert_eq!(c.px(&p(0, 0)), (BigInt::from(400), BigInt::from(400)));
        assert_eq!(c.px(&p(-4, 4)), (BigInt::from(0), BigInt::from(0)));
        assert_eq!(c.px(&(Rational::new(1, 3), Rational::zero())).0, BigInt::from(433));
        // radius 1 is 100 units; radius^2 = 2 is 141.42 units
        assert_eq!(c.length_from_square(&Rational::one()), BigInt::from(100));
        assert_eq!(c.length_from_square(&Rational::integer(2)), BigInt::from(141));
    }
}
