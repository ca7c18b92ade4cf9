//! Bracket scanning and bisection for scalar functions of one variable.

/// Sample `f` on `points` uniformly spaced abscissae in `[lo, hi]` and return
/// every bracket `[a, b]` over which `f` changes sign. Points where `f`
/// returns `None` break the scan. Exact zeros on the grid come back as
/// zero-width brackets.
pub(crate) fn sign_changes<F>(mut f: F, lo: f64, hi: f64, points: usize) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> Option<f64>,
{
    let step = (hi - lo) / (points - 1) as f64;
    let abscissa = |i: usize| if i + 1 == points { hi } else { lo + step * i as f64 };
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..points {
        let x = abscissa(i);
        let fx = f(x).filter(|v| v.is_finite());
        match (prev, fx) {
            (_, Some(0.0)) => brackets.push((x, x)),
            (Some((xa, fa)), Some(fb)) if fa != 0.0 && (fa < 0.0) != (fb < 0.0) => {
                brackets.push((xa, x))
            }
            _ => {}
        }
        prev = fx.map(|v| (x, v));
    }
    brackets
}

/// Bisect `[a, b]` down to adjacent floating-point numbers. Returns the
/// endpoint with the smaller `|f|` together with that value.
pub(crate) fn bisect<F>(mut f: F, mut a: f64, mut b: f64) -> Option<(f64, f64)>
where
    F: FnMut(f64) -> Option<f64>,
{
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Some((a, 0.0));
    }
    if fb == 0.0 {
        return Some((b, 0.0));
    }
    if (fa < 0.0) == (fb < 0.0) {
        return None;
    }
    for _ in 0..2100 {
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some((mid, 0.0));
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    Some(if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_roots_of_cubic() {
        let f = |x: f64| Some((x - 1.0) * (x + 2.0) * (x - 3.5));
        let brackets = sign_changes(f, -10.0, 10.0, 101);
        assert_eq!(brackets.len(), 3);
        let roots: Vec<f64> = brackets.iter().map(|&(a, b)| bisect(f, a, b).unwrap().0).collect();
        for (r, want) in roots.iter().zip([-2.0, 1.0, 3.5]) {
            assert!((r - want).abs() < 1e-14, "{r} vs {want}");
        }
    }

    #[test]
    fn grid_hit_is_reported_once() {
        let brackets = sign_changes(Some, -1.0, 1.0, 3);
        assert_eq!(brackets, vec![(0.0, 0.0)]);
    }

    #[test]
    fn undefined_points_break_brackets() {
        let f = |x: f64| if x.abs() < 0.3 { None } else { Some(x) };
        assert!(sign_changes(f, -1.0, 1.0, 11).is_empty());
    }

    #[test]
    fn bisect_reaches_machine_precision() {
        let (r, fr) = bisect(|x| Some(x * x - 2.0), 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() <= f64::EPSILON * 2.0);
        assert!(fr.abs() < 1e-15);
        assert!(bisect(|x| Some(x * x + 1.0), -1.0, 1.0).is_none());
    }
}
