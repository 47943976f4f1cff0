use clap::{Subcommand, ValueEnum};
use w3cft::charge::{generalized_z3, h_at_b2, w_scaled_at_b2, KacCharge};
use w3cft::checks::{run_all, ORBIT_TOLERANCE};
use w3cft::fusion::{block_counts, degenerate_spectrum, fuse_deg_deg, fuse_deg_generic, FusionMode};
use w3cft::models::{kac_table as model_table, potts_content, z3_charge_of, RationalModel};
use w3cft::rational::{int, parse_rational, rat, to_f64};
use w3cft::sl3::{dominant_weights_up_to, Weight};
use w3cft::spin::{curve_row_exact, curve_tables, on_weyl_wall, orbit_points, solve, ConstraintSpec};
use w3cft::virasoro::{vir_c, vir_curves, vir_h, vir_h_of, vir_spin};
use w3cft::{Error, Rational};

use crate::output::{Table, Value};
use crate::{CliError, GlobalOpts};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn quad(z: [i64; 4]) -> String {
    format!("({},{},{},{})", z[0], z[1], z[2], z[3])
}

fn z3_value(q: w3cft::sl3::Z3) -> Value {
    Value::Rational(int(q.balanced().into()))
}

pub fn kac_table(p: i64, p_prime: i64) -> Result<Table, CliError> {
    let model = RationalModel::new(p, p_prime).map_err(|e| usage(e.to_string()))?;
    let b2 = model.b2();
    let mut t = Table::new(["n1", "n2", "m1", "m2", "alt1", "alt2", "q", "h", "bw"]);
    for f in model_table(&model) {
        let c = f.charge();
        let mut row: Vec<Value> = f.indices.iter().map(|&n| Value::Int(n)).collect();
        row.push(Value::text(quad(f.alternates[0])));
        row.push(Value::text(quad(f.alternates[1])));
        row.push(z3_value(z3_charge_of(&f, &model)));
        row.push(Value::Rational(h_at_b2(&c, &b2)));
        row.push(Value::Rational(w_scaled_at_b2(&c, &b2)));
        t.push(row);
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    W3Psi,
    W3Eps,
    Virasoro,
}

/// Parsed `MIN:MAX:STEPS`; both endpoints are included.
pub struct Grid {
    pub min: Rational,
    pub max: Rational,
    pub steps: usize,
}

fn parse_endpoint(s: &str) -> Result<Rational, CliError> {
    if let Ok(r) = parse_rational(s) {
        return Ok(r);
    }
    let x: f64 = s.trim().parse().map_err(|_| usage(format!("bad grid endpoint {s:?}")))?;
    Rational::from_float(x).ok_or_else(|| usage(format!("bad grid endpoint {s:?}")))
}

pub fn parse_grid(s: &str) -> Result<Grid, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(usage(format!("grid must be MIN:MAX:STEPS, got {s:?}")));
    };
    let min = parse_endpoint(lo)?;
    let max = parse_endpoint(hi)?;
    let steps: usize = n.trim().parse().map_err(|_| usage(format!("bad step count {n:?}")))?;
    if min <= int(0) || min >= max {
        return Err(usage(format!("grid needs 0 < MIN < MAX, got {s:?}")));
    }
    if steps < 2 {
        return Err(usage(format!("grid needs at least 2 steps, got {steps}")));
    }
    Ok(Grid { min, max, steps })
}

impl Grid {
    pub fn exact_points(&self) -> Vec<Rational> {
        let n = self.steps as i64 - 1;
        (0..=n)
            .map(|i| self.min.clone() + (self.max.clone() - self.min.clone()) * rat(i, n))
            .collect()
    }

    pub fn float_points(&self) -> Vec<f64> {
        let (lo, hi) = (to_f64(&self.min), to_f64(&self.max));
        let n = (self.steps - 1) as f64;
        (0..self.steps).map(|i| lo + (hi - lo) * i as f64 / n).collect()
    }
}

/// Curve fields in the order of the library tables.
const W3_NAMES: [&str; 6] = [
    "h_sigma",
    "h_psi",
    "h_psi_prime",
    "h_sigma_prime",
    "h_sigma_double_prime",
    "h_epsilon",
];

fn w3_order(kind: CurveKind) -> [usize; 6] {
    match kind {
        CurveKind::W3Eps => [0, 5, 3, 4, 1, 2],
        _ => [0, 1, 2, 3, 4, 5],
    }
}

pub fn curves(kind: CurveKind, g: &GlobalOpts) -> Result<Table, CliError> {
    let grid = match &g.grid {
        Some(s) => parse_grid(s)?,
        None => default_grid(kind, g.exact),
    };
    match (kind, g.exact) {
        (CurveKind::Virasoro, false) => virasoro_numeric(&grid.float_points()),
        (CurveKind::Virasoro, true) => virasoro_exact(&grid.exact_points()),
        (_, false) => w3_numeric(kind, &grid.float_points()),
        (_, true) => w3_exact(kind, &grid.exact_points()),
    }
}

fn default_grid(kind: CurveKind, exact: bool) -> Grid {
    // Exact grids are in b², decimal grids in b.
    let (min, max, steps) = match (kind, exact) {
        (CurveKind::Virasoro, true) => (rat(1, 4), rat(5, 2), 46),
        (_, true) => (rat(1, 2), int(2), 31),
        (CurveKind::Virasoro, false) => (rat(1, 2), float(2.5f64.sqrt()), 41),
        (_, false) => (float(0.5f64.sqrt()), float(2f64.sqrt()), 41),
    };
    Grid { min, max, steps }
}

fn float(x: f64) -> Rational {
    Rational::from_float(x).expect("finite")
}

fn w3_numeric(kind: CurveKind, grid: &[f64]) -> Result<Table, CliError> {
    let order = w3_order(kind);
    let mut t = Table::new(["b", "b2", "c"].into_iter().chain(order.map(|i| W3_NAMES[i])));
    for r in curve_tables(grid)? {
        let mut row = vec![Value::Decimal(r.b), Value::Decimal(r.b * r.b), Value::Decimal(r.c)];
        row.extend(order.map(|i| Value::Decimal(r.h[i])));
        t.push(row);
    }
    Ok(t)
}

fn w3_exact(kind: CurveKind, grid: &[Rational]) -> Result<Table, CliError> {
    let order = w3_order(kind);
    let mut t = Table::new(["b2", "c"].into_iter().chain(order.map(|i| W3_NAMES[i])));
    for b2 in grid {
        let r = curve_row_exact(b2)?;
        let mut row = vec![Value::Rational(r.b2), Value::Rational(r.c)];
        row.extend(order.map(|i| Value::Rational(r.h[i].clone())));
        t.push(row);
    }
    Ok(t)
}

fn virasoro_numeric(grid: &[f64]) -> Result<Table, CliError> {
    let mut t = Table::new([
        "b",
        "b2",
        "c",
        "h_spin",
        "h21",
        "h13",
        "h12",
        "sqrt_potts_q",
        "loop_n",
        "potts_branch",
        "on_branch",
    ]);
    for r in vir_curves(grid)? {
        t.push(vec![
            Value::Decimal(r.b),
            Value::Decimal(r.b * r.b),
            Value::Decimal(r.c),
            Value::Decimal(r.h_spin),
            Value::Decimal(r.h21),
            Value::Decimal(r.h13),
            Value::Decimal(r.h12),
            Value::Decimal(r.sqrt_potts_q),
            Value::Decimal(r.loop_n),
            Value::text(r.potts_branch),
            Value::text(r.on_branch),
        ]);
    }
    Ok(t)
}

/// Loop and Potts weights involve cosines, so the exact table omits them.
fn virasoro_exact(grid: &[Rational]) -> Result<Table, CliError> {
    let polys = [
        vir_c(),
        vir_h_of(&vir_spin()),
        vir_h(&int(2), &int(1)),
        vir_h(&int(1), &int(3)),
        vir_h(&int(1), &int(2)),
    ];
    let mut t = Table::new(["b2", "c", "h_spin", "h21", "h13", "h12"]);
    for b2 in grid {
        let mut row = vec![Value::Rational(b2.clone())];
        for p in &polys {
            row.push(Value::Rational(p.eval_at_b2(b2).expect("even powers")));
        }
        t.push(row);
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrbitField {
    Sigma,
    Sigma1,
    Sigma2,
}

impl OrbitField {
    fn charge(self) -> KacCharge {
        match self {
            OrbitField::Sigma => KacCharge::sigma(),
            OrbitField::Sigma1 => KacCharge::sigma_prime(),
            OrbitField::Sigma2 => KacCharge::sigma_double_prime(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            OrbitField::Sigma => "sigma",
            OrbitField::Sigma1 => "sigma1",
            OrbitField::Sigma2 => "sigma2",
        }
    }
}

/// Twelve points per field and `p`; `shared` counts the other listed fields
/// whose orbit passes through the same point.
pub fn orbits(fields: &[OrbitField], p_min: i64, p_max: i64) -> Result<Table, CliError> {
    if !(1 <= p_min && p_min <= p_max && p_max <= 100) {
        return Err(usage(format!(
            "need 1 <= p-min <= p-max <= 100, got {p_min}..{p_max}"
        )));
    }
    let fields = if fields.is_empty() {
        vec![OrbitField::Sigma, OrbitField::Sigma1, OrbitField::Sigma2]
    } else {
        let mut f = fields.to_vec();
        f.dedup();
        f
    };
    let mut t = Table::new(["field", "p", "b2", "index", "x", "y", "on_wall", "shared"]);
    for p in p_min..=p_max {
        let b2 = rat(p, p + 1);
        let b = to_f64(&b2).sqrt();
        let orbits: Vec<Vec<(f64, f64)>> = fields
            .iter()
            .map(|f| orbit_points(&f.charge(), b))
            .collect::<Result<_, Error>>()?;
        for (k, field) in fields.iter().enumerate() {
            for (i, &pt) in orbits[k].iter().enumerate() {
                let shared = orbits
                    .iter()
                    .enumerate()
                    .filter(|(j, o)| {
                        *j != k
                            && o.iter().any(|q| {
                                (q.0 - pt.0).abs() < ORBIT_TOLERANCE
                                    && (q.1 - pt.1).abs() < ORBIT_TOLERANCE
                            })
                    })
                    .count();
                t.push(vec![
                    Value::text(field.name()),
                    Value::Int(p),
                    Value::Rational(b2.clone()),
                    Value::Int(i as i64),
                    Value::Decimal(pt.0),
                    Value::Decimal(pt.1),
                    Value::Bool(on_weyl_wall(pt, ORBIT_TOLERANCE)),
                    Value::Int(shared as i64),
                ]);
            }
        }
    }
    Ok(t)
}

/// An empty result prints the header only, with a note on stderr.
pub fn spin_search(spec: &ConstraintSpec) -> Result<Table, CliError> {
    let mut t = Table::new([
        "solution",
        "kind",
        "n1",
        "n2",
        "m1",
        "m2",
        "class",
        "q",
        "h",
        "w",
        "dimension",
        "directions",
        "witnesses",
    ]);
    let sols = match solve(spec) {
        Ok(s) => s,
        Err(Error::NoSolution) => {
            eprintln!("note: the constraints have no solution");
            return Ok(t);
        }
        Err(e) => return Err(e.into()),
    };
    for (k, s) in sols.iter().enumerate() {
        let (dimension, directions) = match &s.family {
            None => (0, String::new()),
            Some(f) => {
                let (_, dirs) = f.parametric();
                let dirs: Vec<String> = dirs
                    .iter()
                    .map(|d| {
                        let v: Vec<String> = d.iter().map(ToString::to_string).collect();
                        format!("({})", v.join(","))
                    })
                    .collect();
                (f.dimension() as i64, dirs.join(" "))
            }
        };
        let witnesses: Vec<String> = s.witnesses.iter().map(ToString::to_string).collect();
        let mut row = vec![
            Value::Int(k as i64 + 1),
            Value::text(if s.is_family() { "family" } else { "point" }),
        ];
        row.extend(s.charge.indices().into_iter().map(Value::Rational));
        row.extend([
            Value::text(s.class.name()),
            Value::Rational(generalized_z3(&s.charge)),
            Value::text(s.h.to_string()),
            Value::text(s.w.to_string()),
            Value::Int(dimension),
            Value::text(directions),
            Value::text(witnesses.join("; ")),
        ]);
        t.push(row);
    }
    Ok(t)
}

#[derive(Subcommand, Debug)]
pub enum FusionOp {
    /// Degenerate fields in the fusion of a charge with itself or its conjugate.
    Spectrum {
        /// A field name (sigma, sigma1, sigma2, psi, psi1, epsilon, identity)
        /// or four indices `n1,n2,m1,m2`.
        #[arg(long)]
        charge: String,
        /// `self` or `conjugate`.
        #[arg(long, default_value = "self")]
        mode: String,
    },
    /// Fusion of two completely degenerate fields.
    Degenerate {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Truncate to the Kac table of `P,P′`.
        #[arg(long)]
        model: Option<String>,
    },
    /// Fusion of the degenerate field `(λ, μ)` with an arbitrary charge.
    Generic {
        /// `λ1,λ2`
        #[arg(long)]
        lam: String,
        /// `μ1,μ2`
        #[arg(long)]
        mu: String,
        #[arg(long)]
        charge: String,
    },
    /// Conformal block counts in both channels.
    Blocks,
}

fn split_list(s: &str, n: usize) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<Rational> = s
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .map_err(|e| usage(e.to_string()))?;
    if parts.len() != n {
        return Err(usage(format!("expected {n} comma-separated numbers, got {s:?}")));
    }
    Ok(parts)
}

pub fn parse_charge(s: &str) -> Result<KacCharge, CliError> {
    Ok(match s {
        "identity" => KacCharge::identity(),
        "sigma" => KacCharge::sigma(),
        "sigma1" | "sigma_prime" => KacCharge::sigma_prime(),
        "sigma2" | "sigma_double_prime" => KacCharge::sigma_double_prime(),
        "psi" => KacCharge::psi(),
        "psi1" | "psi_prime" => KacCharge::psi_prime(),
        "epsilon" => KacCharge::epsilon(),
        _ => KacCharge::from_indices(&split_list(s, 4)?),
    })
}

fn parse_weight(s: &str) -> Result<Weight, CliError> {
    let v = split_list(s, 2)?;
    let w = Weight::new(v[0].clone(), v[1].clone());
    if !w.is_dominant_integral() {
        return Err(usage(format!("{s:?} is not a dominant integral weight")));
    }
    Ok(w)
}

fn parse_model(s: &str) -> Result<RationalModel, CliError> {
    let v = split_list(s, 2)?;
    let n = |x: &Rational| {
        w3cft::rational::as_i64(x).ok_or_else(|| usage(format!("model parameters must be integers: {s:?}")))
    };
    RationalModel::new(n(&v[0])?, n(&v[1])?).map_err(|e| usage(e.to_string()))
}

fn weight_values(w: &Weight) -> [Value; 2] {
    [Value::Rational(w.a1.clone()), Value::Rational(w.a2.clone())]
}

pub fn fusion(op: &FusionOp, g: &GlobalOpts) -> Result<Table, CliError> {
    match op {
        FusionOp::Spectrum { charge, mode } => {
            let charge = parse_charge(charge)?;
            let mode = FusionMode::parse(mode).map_err(|e| usage(e.to_string()))?;
            let mut t = Table::new(["lam1", "lam2", "mu1", "mu2", "q_lam", "q_mu"]);
            for (l, m) in degenerate_spectrum(&charge, g.cutoff, mode)? {
                let mut row: Vec<Value> = weight_values(&l).into();
                row.extend(weight_values(&m));
                row.push(z3_value(l.z3_charge().expect("integral")));
                row.push(z3_value(m.z3_charge().expect("integral")));
                t.push(row);
            }
            Ok(t)
        }
        FusionOp::Degenerate { left, right, model } => {
            let (a, b) = (parse_charge(left)?, parse_charge(right)?);
            let model = model.as_deref().map(parse_model).transpose()?;
            let out = fuse_deg_deg(&a, &b, model.as_ref())?;
            let mut t = Table::new(["n1", "n2", "m1", "m2", "multiplicity", "h"]);
            for term in &out.terms {
                let mut row: Vec<Value> =
                    term.charge.indices().into_iter().map(Value::Rational).collect();
                row.push(Value::Int(term.multiplicity as i64));
                row.push(match &model {
                    Some(m) => Value::Rational(h_at_b2(&term.charge, &m.b2())),
                    None => Value::text(w3cft::charge::h_of(&term.charge).to_string()),
                });
                t.push(row);
            }
            Ok(t)
        }
        FusionOp::Generic { lam, mu, charge } => {
            let (l, m) = (parse_weight(lam)?, parse_weight(mu)?);
            let out = fuse_deg_generic(&l, &m, &parse_charge(charge)?)?;
            let mut t = Table::new(["n1", "n2", "m1", "m2", "multiplicity"]);
            for term in &out.terms {
                let mut row: Vec<Value> =
                    term.charge.indices().into_iter().map(Value::Rational).collect();
                row.push(Value::Int(term.multiplicity as i64));
                t.push(row);
            }
            Ok(t)
        }
        FusionOp::Blocks => {
            let mut t = Table::new(["lam1", "lam2", "mu1", "mu2", "s_channel", "t_channel", "equal"]);
            let reps = dominant_weights_up_to(g.cutoff);
            for l in &reps {
                for m in &reps {
                    let n = block_counts(l, m)?;
                    let mut row: Vec<Value> = weight_values(l).into();
                    row.extend(weight_values(m));
                    row.extend([
                        Value::Int(n.s_channel as i64),
                        Value::Int(n.t_channel as i64),
                        Value::Bool(n.s_channel == n.t_channel),
                    ]);
                    t.push(row);
                }
            }
            Ok(t)
        }
    }
}

pub fn potts(fusions: bool) -> Result<Table, CliError> {
    let report = potts_content()?;
    if fusions {
        let mut t = Table::new(["left", "right", "products"]);
        for f in &report.fusions {
            t.push(vec![
                Value::text(f.left),
                Value::text(f.right),
                Value::text(f.products.join(" + ")),
            ]);
        }
        return Ok(t);
    }
    let mut t = Table::new(["name", "n1", "n2", "m1", "m2", "alt1", "alt2", "q", "h", "bw"]);
    for f in &report.fields {
        let mut row = vec![Value::text(f.name)];
        row.extend(f.field.indices.iter().map(|&n| Value::Int(n)));
        row.extend([
            Value::text(quad(f.field.alternates[0])),
            Value::text(quad(f.field.alternates[1])),
            z3_value(f.charge),
            Value::Rational(f.h.clone()),
            Value::Rational(f.w_scaled.clone()),
        ]);
        t.push(row);
    }
    Ok(t)
}

/// The suite table and whether every check passed.
pub fn check() -> (Table, bool) {
    let mut t = Table::new(["check", "status", "detail"]);
    let results = run_all();
    for r in &results {
        eprintln!("{r}");
        t.push(vec![
            Value::text(r.name),
            Value::text(if r.passed { "PASS" } else { "FAIL" }),
            Value::text(r.detail.clone()),
        ]);
    }
    (t, results.iter().all(|r| r.passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = parse_grid("1/2:2:4").unwrap();
        assert_eq!(g.exact_points(), vec![rat(1, 2), int(1), rat(3, 2), int(2)]);
        assert_eq!(g.float_points().len(), 4);
        assert!(parse_grid("1:1:4").is_err());
        assert!(parse_grid("0:1:4").is_err());
        assert!(parse_grid("0.5:1:1").is_err());
        assert!(parse_grid("0.5:1").is_err());
        assert_eq!(parse_grid("0.5:1.5:3").unwrap().min, rat(1, 2));
    }

    #[test]
    fn default_exact_grid_hits_special_points() {
        let pts = default_grid(CurveKind::W3Psi, true).exact_points();
        assert!(pts.contains(&rat(4, 5)) && pts.contains(&rat(1, 2)) && pts.contains(&int(2)));
        let vir = default_grid(CurveKind::Virasoro, true).exact_points();
        assert!(vir.contains(&rat(3, 4)) && vir.contains(&rat(2, 5)) && vir.contains(&int(1)));
    }

    #[test]
    fn charges_by_name_and_index() {
        assert_eq!(parse_charge("sigma").unwrap(), KacCharge::sigma());
        assert_eq!(parse_charge("2/3,-1/3,1/3,1/3").unwrap(), KacCharge::sigma());
        assert!(parse_charge("1,2,3").is_err());
        assert!(parse_weight("-1,0").is_err());
        assert_eq!(w3cft::charge::classify(&parse_charge("1,1,2,1").unwrap()), w3cft::charge::FieldClass::CompletelyDegenerate);
    }
}
