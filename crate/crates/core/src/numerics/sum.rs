/// Pairwise (cascade) summation with a fixed reduction tree.
///
/// The tree depends only on the slice length, so results are bit-identical
/// for identical inputs.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// `ln(sum(exp(v)))` without overflow. Returns `-inf` for an empty slice or
/// when every term is `-inf`.
pub fn log_sum_exp(ln_values: &[f64]) -> f64 {
    let max = ln_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let shifted: Vec<f64> = ln_values.iter().map(|v| (v - max).exp()).collect();
    max + pairwise_sum(&shifted).ln()
}
