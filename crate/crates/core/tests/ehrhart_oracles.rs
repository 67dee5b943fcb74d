use hstar_core::ehrhart::{boundary_hstar, hstar, local_hstar};
use hstar_core::lattice::LatticePolytope;
use proptest::prelude::*;

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| *x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

/// Counts lattice points of the fundamental parallelepiped of the cone over a
/// simplex, bucketed by height. Half-open gives h*, open gives the box polynomial.
fn parallelepiped(vertices: &[Vec<i64>], open: bool) -> Vec<i64> {
    let d = vertices.len() - 1;
    let cols: Vec<Vec<i64>> = vertices.iter().map(|v| v.iter().copied().chain([1]).collect()).collect();
    let rows = |replace: Option<(usize, &[i64])>| -> Vec<Vec<i64>> {
        (0..=d)
            .map(|r| {
                (0..=d)
                    .map(|c| match replace {
                        Some((i, w)) if i == c => w[r],
                        _ => cols[c][r],
                    })
                    .collect()
            })
            .collect()
    };
    let full = det(&rows(None));
    let lo = vertices.iter().flatten().copied().min().unwrap().min(0) * (d as i64 + 1);
    let hi = vertices.iter().flatten().copied().max().unwrap().max(0) * (d as i64 + 1);
    let mut out = vec![0; d + 1];
    let mut x = vec![lo; d];
    loop {
        for h in 0..=d as i64 {
            let w: Vec<i64> = x.iter().copied().chain([h]).collect();
            let inside = (0..=d).all(|i| {
                let c = det(&rows(Some((i, &w))));
                let (c, n) = if full < 0 { (-c, -full) } else { (c, full) };
                if open {
                    0 < c && c < n
                } else {
                    0 <= c && c < n
                }
            });
            if inside {
                out[h as usize] += 1;
            }
        }
        let mut i = 0;
        while i < d {
            x[i] += 1;
            if x[i] <= hi {
                break;
            }
            x[i] = lo;
            i += 1;
        }
        if i == d {
            return out;
        }
    }
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strictly convex hull, counter-clockwise.
fn hull2(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<Vec<i64>> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &Vec<i64>>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for q in iter {
            while h.len() >= start + 2 && cross(&h[h.len() - 2], &h[h.len() - 1], q) <= 0 {
                h.pop();
            }
            h.push(q.clone());
        }
        h.pop();
    }
    h
}

fn polygon_counts(hull: &[Vec<i64>], t: i64) -> (u64, u64) {
    let scaled: Vec<Vec<i64>> = hull.iter().map(|v| vec![v[0] * t, v[1] * t]).collect();
    let (xs, ys): (Vec<i64>, Vec<i64>) = scaled.iter().map(|v| (v[0], v[1])).unzip();
    let (mut all, mut interior) = (0, 0);
    for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            let q = [x, y];
            let sides: Vec<i64> =
                (0..scaled.len()).map(|i| cross(&scaled[i], &scaled[(i + 1) % scaled.len()], &q)).collect();
            if sides.iter().all(|&s| s >= 0) {
                all += 1;
                if sides.iter().all(|&s| s > 0) {
                    interior += 1;
                }
            }
        }
    }
    (all, interior)
}

fn twice_area(hull: &[Vec<i64>]) -> i64 {
    (0..hull.len())
        .map(|i| {
            let (a, b) = (&hull[i], &hull[(i + 1) % hull.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum()
}

fn polygon() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3..8)
        .prop_map(|pts| hull2(&pts))
        .prop_filter("full dimensional", |h| h.len() >= 3)
}

fn simplex(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, d), d + 1).prop_filter("nondegenerate", move |v| {
        let m: Vec<Vec<i64>> = (0..d).map(|r| (1..=d).map(|c| v[c][r] - v[0][r]).collect()).collect();
        det(&m) != 0
    })
}

#[test]
fn fixture_h_stars() {
    let cases: [(&str, Vec<Vec<i64>>, Vec<i64>); 4] = [
        ("cube01", vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], vec![1, 4, 1, 0]),
        ("triangle", vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![1, 1, 1]),
        ("reeve3", vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 3]], vec![1, 0, 2, 0]),
        ("segment", vec![vec![0], vec![3]], vec![1, 2]),
    ];
    for (name, v, expected) in cases {
        let p = LatticePolytope::new(name, v).unwrap();
        assert_eq!(hstar(&p).h_star, expected, "{name}");
    }
}

#[test]
fn cube_boundary_h_star_from_formula() {
    // #∂(t[-1,1]^3) = (2t+1)^3 - (2t-1)^3 = 24t² + 2
    let v = (0..8).map(|m: u32| (0..3).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
    let p = LatticePolytope::new("c", v).unwrap();
    let b = boundary_hstar(&p);
    assert_eq!(&b.counts[1..], &[26, 98, 218]);
    assert_eq!(b.h_star, vec![1, 23, 23, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polygon_counts_match_brute_force(hull in polygon()) {
        let p = LatticePolytope::new("poly", hull.clone()).unwrap();
        let (all, interior) = p.dilate_counts(3);
        for t in 0..=3u32 {
            let (a, i) = polygon_counts(&hull, t as i64);
            prop_assert_eq!(all[t as usize], if t == 0 { 1 } else { a });
            if t > 0 {
                prop_assert_eq!(interior[t as usize], i);
            }
        }
        let h = hstar(&p);
        prop_assert_eq!(h.normalized_volume(), twice_area(&hull));
        // Pick: 2A = 2I + B - 2
        let (a, i) = polygon_counts(&hull, 1);
        prop_assert_eq!(twice_area(&hull), 2 * i as i64 + (a - i) as i64 - 2);
        prop_assert_eq!(h.h_star[2], i as i64);
    }

    #[test]
    fn simplex_h_star_is_parallelepiped_count(v in simplex(3)) {
        let p = LatticePolytope::new("s", v.clone()).unwrap();
        prop_assert_eq!(hstar(&p).h_star, parallelepiped(&v, false));
    }

    #[test]
    fn simplex_local_h_star_is_box_polynomial(v in prop_oneof![simplex(2), simplex(3)]) {
        let d = v.len() - 1;
        let p = LatticePolytope::new("s", v.clone()).unwrap();
        let mut boxed = vec![0];
        boxed.extend(parallelepiped(&v, true).into_iter().skip(1));
        boxed.push(0);
        boxed.truncate(d + 2);
        let ell = local_hstar(&p).unwrap();
        prop_assert_eq!(&ell.ell_star, &boxed);
        prop_assert!(ell.is_palindromic());
    }

    #[test]
    fn reciprocity_and_stanley_inequalities(v in prop_oneof![simplex(3), simplex(2)]) {
        let p = LatticePolytope::new("s", v).unwrap();
        let d = p.dim();
        let data = hstar(&p);
        let (_, interior) = p.dilate_counts(d as u32 + 1);
        let sign = if d.is_multiple_of(2) { 1 } else { -1 };
        for t in 1..=d as i64 + 1 {
            prop_assert_eq!(interior[t as usize] as i64, sign * data.ehrhart_value(-t));
        }
        let h = &data.h_star;
        prop_assert!(h.iter().all(|&x| x >= 0));
        prop_assert_eq!(h[0], 1);
        prop_assert_eq!(h[1], p.num_lattice_points() as i64 - d as i64 - 1);
        prop_assert_eq!(h[d], interior[1] as i64);
        // Hibi: h_0 + … + h_{i+1} ≥ h_d + … + h_{d-i}
        for i in 0..d / 2 {
            let low: i64 = h[..=i + 1].iter().sum();
            let high: i64 = h[d - i..].iter().sum();
            prop_assert!(low >= high);
        }
    }
}
