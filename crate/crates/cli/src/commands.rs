//! One function per command; each returns the table to emit.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use framelab_core::dextrodual::{
    build_examplecase_dual, build_extension_plan, default_singular_order, nonrepresentability_witness, DualSystem,
    ExamplecaseDual, ExtensionOptions, ExtensionPlan,
};
use framelab_core::hardy::{
    boundary_errors, cauchy_series, kernel_truncation, normalized_cauchy_series, reproducing_kernel_eval,
    shift_residual, DiskSeries, FiniteFrameFamily, KERNEL_TAIL,
};
use framelab_core::kaczmarz::{auxiliary_sequence, effectiveness_table};
use framelab_core::measure::{CircleMeasure, FunctionSpec, MomentTable};
use framelab_core::realline::{
    disintegrate, double_expansion_coefficients, lattice_effective_expansion, periodize, weighted_bessel_decay,
};
use framelab_core::testfns::generate_test_functions;

use crate::config::{Command, DualAction, DualKind, ExamplecaseAction, FamilyKind, HardyAction, RealAction, RunConfig};
use crate::emit::{Cell, Table};
use crate::error::CliError;
use crate::spec_io::{load_function, load_measure, load_real_measure, load_values};

pub fn execute(config: &RunConfig) -> Result<Table, CliError> {
    match &config.command {
        Command::Moments => moments(config),
        Command::Aux => aux(config),
        Command::Effective { random } => effective(config, *random),
        Command::Dextrodual { action, parseval, boundary } => {
            let plan = extension_plan(config, *parseval, *boundary)?;
            dextrodual(config, &plan, *action)
        }
        Command::Witness { atom } => witness(config, *atom),
        Command::Examplecase { action, singular_order } => examplecase(config, *action, *singular_order),
        Command::Realline { action } => realline(config, action),
        Command::Hardy { action } => hardy(config, action),
    }
}

fn complex_cells(v: Complex64) -> [Cell; 2] {
    [v.re.into(), v.im.into()]
}

fn indexed_table(values: impl IntoIterator<Item = (i64, Complex64)>) -> Table {
    let mut t = Table::new(&["n", "re", "im"]);
    for (n, v) in values {
        let [re, im] = complex_cells(v);
        t.push(vec![n.into(), re, im]);
    }
    t
}

fn moments(config: &RunConfig) -> Result<Table, CliError> {
    let measure = load_measure(config.measure_path()?)?;
    let order = config.order()? as i64;
    Ok(indexed_table((0..=order).map(|n| (n, measure.moment(n)))))
}

fn aux(config: &RunConfig) -> Result<Table, CliError> {
    let measure = load_measure(config.measure_path()?)?;
    let order = config.order()?;
    let triangle = auxiliary_sequence(&MomentTable::from_measure(&measure, order), order)?;
    let mut t = Table::new(&["n", "k", "re", "im"]);
    for (n, row) in triangle.rows().iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let [re, im] = complex_cells(*v);
            t.push(vec![n.into(), k.into(), re, im]);
        }
    }
    Ok(t)
}

fn effective(config: &RunConfig, random: Option<usize>) -> Result<Table, CliError> {
    let measure = load_measure(config.measure_path()?)?;
    let orders = config.orders()?;
    match random {
        None => {
            let f = load_function(config.function_path()?)?;
            let mut t = Table::new(&["N", "defect", "residual"]);
            for row in effectiveness_table(&measure, &f, orders)? {
                t.push(vec![row.order.into(), row.defect.into(), row.residual.into()]);
            }
            Ok(t)
        }
        Some(count) => {
            let mut t = Table::new(&["function", "N", "defect", "residual"]);
            for (i, f) in generate_test_functions(&measure, config.seed, count).iter().enumerate() {
                for row in effectiveness_table(&measure, f, orders)? {
                    t.push(vec![i.into(), row.order.into(), row.defect.into(), row.residual.into()]);
                }
            }
            Ok(t)
        }
    }
}

fn extension_plan(config: &RunConfig, parseval: bool, boundary: Option<f64>) -> Result<ExtensionPlan, CliError> {
    let measure = load_measure(config.measure_path()?)?;
    Ok(build_extension_plan(&measure, ExtensionOptions { parseval, boundary })?)
}

fn coefficient_table(dual: &dyn DualSystem, f: &FunctionSpec, order: usize) -> Result<Table, CliError> {
    Ok(indexed_table(dual.coefficients(f, order)?.indexed()))
}

fn reconstruction_table(dual: &dyn DualSystem, f: &FunctionSpec, orders: &[usize]) -> Result<Table, CliError> {
    let mut t = Table::new(&["M", "atomErrorSq", "densityErrorSq", "totalErrorSq"]);
    for &m in orders {
        let r = dual.reconstruct(f, m)?;
        t.push(vec![m.into(), r.atom_error_sq.into(), r.density_error_sq.into(), r.total_error_sq.into()]);
    }
    Ok(t)
}

fn dextrodual(config: &RunConfig, plan: &ExtensionPlan, action: DualAction) -> Result<Table, CliError> {
    match action {
        DualAction::Build => {
            let mut t = Table::new(&["atom", "weight", "start", "end"]);
            for j in plan.intervals() {
                t.push(vec![j.atom.location.into(), j.atom.weight.into(), j.start.into(), j.end.into()]);
            }
            Ok(t)
        }
        DualAction::Coeffs => coefficient_table(plan, &load_function(config.function_path()?)?, config.order()?),
        DualAction::Reconstruct => {
            reconstruction_table(plan, &load_function(config.function_path()?)?, config.orders()?)
        }
        DualAction::Bounds => {
            let (lower, upper) = plan.frame_bounds();
            let mut t = Table::new(&["lower", "upper"]);
            t.push(vec![lower.into(), upper.into()]);
            Ok(t)
        }
    }
}

fn witness(config: &RunConfig, atom: f64) -> Result<Table, CliError> {
    let measure = load_measure(config.measure_path()?)?;
    let target = FunctionSpec::from_atom_values(&[(atom, Complex64::new(1.0, 0.0))])?;
    let mut t = Table::new(&["M", "atomMismatch", "lebesgueNormSq", "distanceSq"]);
    for &m in config.orders()? {
        let row = nonrepresentability_witness(&measure, &target, m)?;
        t.push(vec![m.into(), row.atom_mismatch.into(), row.lebesgue_norm_sq.into(), row.distance_sq.into()]);
    }
    Ok(t)
}

fn examplecase_dual(
    measure: &CircleMeasure,
    config: &RunConfig,
    singular_order: Option<usize>,
) -> Result<ExamplecaseDual, CliError> {
    let top = config.orders.last().copied().unwrap_or(0);
    let order = singular_order.unwrap_or_else(|| default_singular_order(top));
    Ok(build_examplecase_dual(measure, order)?)
}

fn examplecase(
    config: &RunConfig,
    action: ExamplecaseAction,
    singular_order: Option<usize>,
) -> Result<Table, CliError> {
    let measure = load_measure(config.measure_path()?)?;
    let dual = examplecase_dual(&measure, config, singular_order)?;
    match action {
        ExamplecaseAction::Build => {
            let mut t = Table::new(&["interval", "start", "end"]);
            for (name, (a, b)) in [
                ("I1", dual.i1()),
                ("I2", dual.i2()),
                ("singularHull", dual.singular_hull()),
                ("densityHull", dual.density_hull()),
            ] {
                t.push(vec![name.into(), a.into(), b.into()]);
            }
            Ok(t)
        }
        ExamplecaseAction::Coeffs => {
            coefficient_table(&dual, &load_function(config.function_path()?)?, config.order()?)
        }
        ExamplecaseAction::Reconstruct => {
            reconstruction_table(&dual, &load_function(config.function_path()?)?, config.orders()?)
        }
        ExamplecaseAction::Check => {
            let f = load_function(config.function_path()?)?;
            let mut t = Table::new(&["M", "lhs", "rhs", "gap"]);
            for &m in config.orders()? {
                let (lhs, rhs) = dual.bessel_pythagoras_check(&f, m)?;
                t.push(vec![m.into(), lhs.into(), rhs.into(), (rhs - lhs).into()]);
            }
            Ok(t)
        }
    }
}

/// `0, 1, 2, 4, …` up to and including `top`.
fn doubling_grid(top: usize) -> Vec<usize> {
    let mut v = vec![0];
    let mut k = 1;
    while k < top {
        v.push(k);
        k *= 2;
    }
    if top > 0 {
        v.push(top);
    }
    v
}

fn realline(config: &RunConfig, action: &RealAction) -> Result<Table, CliError> {
    if let RealAction::Weighted { weights, scales, indices, terms } = action {
        let mut t = Table::new(&["n", "value", "direct", "tailBound"]);
        for row in weighted_bessel_decay(weights, scales, indices, *terms)? {
            t.push(vec![row.index.into(), row.value.into(), row.direct.into(), row.tail_bound.into()]);
        }
        return Ok(t);
    }
    let measure = load_real_measure(config.measure_path()?)?;
    match action {
        RealAction::Periodize { period } => {
            let folded = periodize(&measure, *period)?;
            let mut t = Table::new(&["x", "w"]);
            for a in folded.atoms() {
                t.push(vec![a.location.into(), a.weight.into()]);
            }
            Ok(t)
        }
        RealAction::Lattice { c } => {
            let values = load_values(config.values_path()?)?;
            let scale = c.unwrap_or_else(|| SQRT_2 * measure.min_spacing());
            let expansion = lattice_effective_expansion(&measure, scale, &values, config.orders()?)?;
            let mut t = Table::new(&["N", "defect", "residual"]);
            for row in expansion.table {
                t.push(vec![row.order.into(), row.defect.into(), row.residual.into()]);
            }
            Ok(t)
        }
        RealAction::Double { inner, outer } => {
            let values = load_values(config.values_path()?)?;
            let system = disintegrate(&measure)?;
            let coeffs = double_expansion_coefficients(&system, &values, *inner, *outer)?;
            let mut t = Table::new(&["N", "M", "defect"]);
            for n in doubling_grid(*inner) {
                for m in doubling_grid(*outer) {
                    t.push(vec![n.into(), m.into(), coeffs.defect(n, m)?.into()]);
                }
            }
            Ok(t)
        }
        RealAction::Weighted { .. } => unreachable!("handled above"),
    }
}

fn family(kind: FamilyKind, dim: usize) -> Result<FiniteFrameFamily, CliError> {
    Ok(match kind {
        FamilyKind::Orthonormal => FiniteFrameFamily::orthonormal(dim)?,
        FamilyKind::Repeated => FiniteFrameFamily::repeated_basis(dim)?,
    })
}

fn series_table(series: &DiskSeries) -> Table {
    indexed_table(series.nonnegative().iter().enumerate().map(|(n, v)| (n as i64, *v)))
}

fn hardy(config: &RunConfig, action: &HardyAction) -> Result<Table, CliError> {
    match action {
        HardyAction::Cauchy => {
            let measure = load_measure(config.measure_path()?)?;
            let f = load_function(config.function_path()?)?;
            Ok(series_table(&cauchy_series(&measure, &f, config.order()?)?))
        }
        HardyAction::Vmu => {
            let measure = load_measure(config.measure_path()?)?;
            let f = load_function(config.function_path()?)?;
            Ok(series_table(&normalized_cauchy_series(&measure, &f, config.order()?)?))
        }
        HardyAction::Boundary { r, dual } => {
            let measure = load_measure(config.measure_path()?)?;
            let f = load_function(config.function_path()?)?;
            let order = config.order()?;
            let rows = match dual {
                DualKind::Parseval | DualKind::Extension => {
                    let options = ExtensionOptions { parseval: *dual == DualKind::Parseval, boundary: None };
                    boundary_errors(&build_extension_plan(&measure, options)?, &f, r, order)?
                }
                DualKind::Examplecase => {
                    let d = build_examplecase_dual(&measure, default_singular_order(order))?;
                    boundary_errors(&d, &f, r, order)?
                }
            };
            let mut t = Table::new(&["r", "errorSq"]);
            for (radius, e) in rows {
                t.push(vec![radius.into(), e.into()]);
            }
            Ok(t)
        }
        HardyAction::Kernel { family: kind, dim, w, z } => {
            let fam = family(*kind, *dim)?;
            let truncation = kernel_truncation(*w, config.tol.unwrap_or(KERNEL_TAIL));
            let mut t = Table::new(&["re(w)", "im(w)", "re(z)", "im(z)", "re(K)", "im(K)"]);
            for zi in z {
                let k = reproducing_kernel_eval(&fam, *w, *zi, truncation)?;
                t.push(vec![w.re.into(), w.im.into(), zi.re.into(), zi.im.into(), k.re.into(), k.im.into()]);
            }
            Ok(t)
        }
        HardyAction::Shift { family: kind, dim } => {
            let fit = shift_residual(&family(*kind, *dim)?)?;
            let mut t = Table::new(&["residual", "operatorNorm"]);
            t.push(vec![fit.residual.into(), fit.operator_norm.into()]);
            Ok(t)
        }
    }
}
