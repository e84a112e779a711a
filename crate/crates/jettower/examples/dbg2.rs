// Independent flag-bundle oracle: integrals over G(2, V1) computed through
// P(S2) = Fl(1,2,V1) -> P(V1) -> X1, i.e. iterated projective bundles only.
use jettower::charclass::{BundleData, HypersurfaceData};
use jettower::ring::{normal_form, GeneratorTable, GradedClass};
use jettower::scalar::{int, one};
use jettower::tower::{fiber_integrate, grassmann_level, Tower};

fn main() {
    let d: i64 = 7;
    // ---- engine route ----
    let tower = Tower::numeric(d).unwrap();
    let g = |n: &str| GradedClass::generator(&tower.table, n).unwrap();
    let (h, a1, d1) = (g("h"), g("a1"), g("d1"));
    let u1 = a1.neg();
    let u2 = d1.neg();
    let f = u1
        .add(&u2.scale(&int(5)))
        .unwrap()
        .add(&h.scale(&int(24)))
        .unwrap(); // u1 + 5u2 + 24h (swapped reading)
    let f_w = u1
        .scale(&int(5))
        .add(&u2)
        .unwrap()
        .add(&h.scale(&int(24)))
        .unwrap(); // 5u1 + u2 + 24h (as-written reading)
    let z = tower.z2_class().unwrap().z;
    let gq = h.scale(&int(24));
    for (name, fc) in [("swapped", &f), ("aswritten", &f_w)] {
        let f7 = fc.pow(7).unwrap();
        let q = f7
            .mul(fc)
            .unwrap()
            .sub(&f7.mul(&gq).unwrap().scale(&int(8)))
            .unwrap()
            .mul(&z)
            .unwrap();
        let engine = tower.integrate_total_numeric(&q).unwrap();
        println!("engine  {name}: {engine}");
    }
    // paper quartic at d
    let paper: i64 = 840000 * d.pow(4) - 13300000 * d.pow(3) - 43246000 * d * d - 2473520 * d;
    println!("paper   swapped?: {paper}");

    // ---- flag oracle route ----
    // table: base h | a1 a2 (level 1) | l (P(V1) taut line) | m (P(V1/L))
    let table = GeneratorTable::with_levels(
        &[("h", 1, 0), ("a1", 1, 1), ("a2", 2, 1), ("l", 1, 2), ("m", 1, 3)],
        &[3, 5, 8, 10],
    )
    .unwrap();
    let base = HypersurfaceData::numeric(&table, int(d)).unwrap();
    let lev1 = grassmann_level(&table, &base.tangent, 2, &["a1", "a2"], &[], 1).unwrap();
    // V1 on this table: recompute chern via the same character route
    let (utable, v1u) = jettower::tower::v1_chern_universal().unwrap();
    // map universal (c1,c2,c3,a1,a2) -> this table with numeric hypersurface classes
    let images: Vec<GradedClass> = utable
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "c1" => base.tangent.c(1).clone(),
            "c2" => base.tangent.c(2).clone(),
            "c3" => base.tangent.c(3).clone(),
            other => GradedClass::generator(&table, other).unwrap(),
        })
        .collect();
    let mut v1_chern = Vec::new();
    for c in &v1u.chern {
        let cc = c.substitute(&table, &images).unwrap();
        v1_chern.push(normal_form(&cc, &lev1.rules).unwrap());
    }
    let v1 = BundleData::new(4, v1_chern).unwrap();

    let mut rules = lev1.rules.clone();
    let lev_l = grassmann_level(&table, &v1, 1, &["l"], &rules, 2).unwrap();
    rules.extend(lev_l.rules.iter().cloned());
    // V1 / L: c = c(V1) / (1 + l), truncated at degree 3 (rank 3)
    let l = GradedClass::generator(&table, "l").unwrap();
    let total_v1 = v1.total_chern(&table).unwrap();
    // (1+l)^{-1} = 1 - l + l^2 - l^3 + l^4 ...
    let mut inv = GradedClass::one(&table);
    let mut pw = GradedClass::one(&table);
    for k in 1..=9u32 {
        pw = pw.mul(&l).unwrap();
        let term = if k % 2 == 1 { pw.neg() } else { pw.clone() };
        inv = inv.add(&term).unwrap();
    }
    let quot_total = total_v1.mul(&inv).unwrap();
    let quot = BundleData::new(
        3,
        (1..=3).map(|i| quot_total.component(i)).collect(),
    )
    .unwrap();
    let lev_m = grassmann_level(&table, &quot, 1, &["m"], &rules, 3).unwrap();
    rules.extend(lev_m.rules.iter().cloned());

    // oracle integral of a class on G(2,V1) given as polynomial in d1,d2,...:
    // substitute d1 -> l+m, d2 -> l*m, multiply by (-l), push down all levels.
    let m = GradedClass::generator(&table, "m").unwrap();
    let d1_img = l.add(&m).unwrap();
    let d2_img = l.mul(&m).unwrap();
    let subst = |x: &GradedClass| -> GradedClass {
        let src = tower.table.clone();
        let imgs: Vec<GradedClass> = src
            .names()
            .iter()
            .map(|n| match n.as_str() {
                "d1" => d1_img.clone(),
                "d2" => d2_img.clone(),
                other => GradedClass::generator(&table, other).unwrap(),
            })
            .collect();
        x.substitute(&table, &imgs).unwrap()
    };
    let integrate_flag = |x: &GradedClass| -> jettower::Scalar {
        let y = x.mul(&l.neg()).unwrap();
        let y = fiber_integrate(&table, &lev_m, &rules, &y).unwrap();
        let y = fiber_integrate(&table, &lev_l, &rules, &y).unwrap();
        let y = fiber_integrate(&table, &lev1, &rules, &y).unwrap();
        base.integrate(&y.component(3)).unwrap()
    };
    // sanity anchors first
    let gt = |n: &str| GradedClass::generator(&tower.table, n).unwrap();
    let anchor1 = gt("d2").pow(2).unwrap().mul(&gt("a1").pow(2).unwrap()).unwrap().mul(&gt("h").pow(3).unwrap()).unwrap();
    println!("oracle d2^2 a1^2 h^3 = {} (engine {})",
        integrate_flag(&subst(&anchor1)),
        tower.integrate_total_numeric(&anchor1).unwrap());
    let anchor2 = gt("d1").pow(4).unwrap().mul(&gt("a1").pow(2).unwrap()).unwrap().mul(&gt("h").pow(3).unwrap()).unwrap();
    println!("oracle d1^4 a1^2 h^3 = {} (engine {})",
        integrate_flag(&subst(&anchor2)),
        tower.integrate_total_numeric(&anchor2).unwrap());
    for (name, fc) in [("swapped", &f), ("aswritten", &f_w)] {
        let f7 = fc.pow(7).unwrap();
        let q = f7
            .mul(fc)
            .unwrap()
            .sub(&f7.mul(&gq).unwrap().scale(&int(8)))
            .unwrap()
            .mul(&z)
            .unwrap();
        println!("oracle  {name}: {}", integrate_flag(&subst(&q)));
    }
    let _ = one();
}
