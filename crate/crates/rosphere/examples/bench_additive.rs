use rosphere::catalog::identify_name;
use rosphere::chains::sphere_complex;
use rosphere::group::{Group, VirtualRep};
use rosphere::homology::presentation;
use rosphere::tables::c4_rows;
use std::collections::BTreeMap;

fn main() {
    let g = Group::c4();
    let t0 = std::time::Instant::now();
    let mut count = 0;
    let mut spots: Vec<(i64,i64)> = vec![];
    for n in 1..=5i64 { for m in 1..=5i64 {
        spots.push((n, m)); spots.push((-n, -m)); spots.push((-n, m)); spots.push((n, -m));
    }}
    spots.push((6,1)); spots.push((1,6)); spots.push((6,6));
    spots.push((-6,1)); spots.push((6,-6)); spots.push((-6,-6));
    for (a, b) in spots {
        let v = VirtualRep::c4(a, b);
        let cx = sphere_complex(g, &v);
        let mut got = BTreeMap::new();
        for k in cx.lo()..=cx.hi() {
            let p = presentation(&cx, k, 0);
            if !p.is_zero() { got.insert(k, identify_name(&p)); }
            count += 1;
        }
        let want: BTreeMap<i64, String> = c4_rows(a, b).into_iter().map(|r| (r.degree, r.name)).collect();
        assert_eq!(got, want, "mismatch at ({}, {})", a, b);
    }
    println!("OK: {} degree computations in {:?}", count, t0.elapsed());
}
