use ordent::entail::smooth_leq;
use ordent::orders::{OrderKind, OrderSpec};
use ordent::sampling::{sample_simplex, seeded_rng};

fn main() {
    for (name, kind) in [
        ("lplus", OrderKind::LownerPlus),
        ("lminus", OrderKind::LownerMinus),
        ("max", OrderKind::MaxRestricted),
        ("major", OrderKind::Majorization),
    ] {
        let spec = OrderSpec::new(kind);
        let mut rng = seeded_rng(71);
        let mut plain = 0usize;
        let mut smoothed = 0usize;
        let mut found = 0usize;
        let mut first = None;
        for _ in 0..50000 {
            let x = sample_simplex(3, &mut rng);
            let y = sample_simplex(3, &mut rng);
            let z = sample_simplex(3, &mut rng);
            if spec.leq(&x, &y).unwrap() { plain += 1; }
            let xy = smooth_leq(&spec, 0.5, &x, &y).unwrap();
            if xy { smoothed += 1; }
            if xy && smooth_leq(&spec, 0.5, &y, &z).unwrap() && !smooth_leq(&spec, 0.5, &x, &z).unwrap() {
                if first.is_none() { first = Some((x.values().to_vec(), y.values().to_vec(), z.values().to_vec())); }
                found += 1;
            }
        }
        println!("{name}: plain={plain} smoothed={smoothed} violations={found} first={first:?}");
    }
}
