//! Closed forms against exhaustive enumeration.

use klstab_core::klregions::{classify_region, complement_dims, is_kl_stable, nonempty};
use klstab_core::lowrank::{rank2_complement_dims, rank2_nonempty, rank3_table, t_stable};
use klstab_core::oracle::{
    enumerate_profiles, printed_rank3_bounds, sweep_complement_dim, sweep_nonempty, SweepSpec,
};
use klstab_core::segre::generic_profile;
use klstab_core::{BundleType, CurveParams, KL};

fn b(n: i64, d: i64) -> BundleType {
    BundleType::new(n, d).unwrap()
}

fn curve(g: i64) -> CurveParams {
    CurveParams::new(g).unwrap()
}

#[test]
fn nonempty_matches_profile_search() {
    for n in 2..=4 {
        for g in 2..=4 {
            for d in 0..n {
                let spec = SweepSpec::square(b(n, d), curve(g), n * g).unwrap();
                for (kl, found) in sweep_nonempty(&spec).unwrap() {
                    assert_eq!(
                        nonempty(b(n, d), curve(g), kl).unwrap(),
                        found,
                        "n={n} d={d} g={g} {kl:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn nonempty_is_generic_profile_stability() {
    for n in 2..=6 {
        for g in 2..=6 {
            for d in -n..2 * n {
                let gen = generic_profile(b(n, d), curve(g)).unwrap();
                for k in -8..=8 {
                    for l in -8..=8 {
                        let kl = KL::new(k, l);
                        assert_eq!(
                            nonempty(b(n, d), curve(g), kl).unwrap(),
                            is_kl_stable(&gen, kl)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn complement_dims_match_strata_search() {
    for n in 2..=3 {
        for g in 2..=5 {
            for d in 0..n {
                let spec = SweepSpec::square(b(n, d), curve(g), n * g).unwrap();
                let oracle = sweep_complement_dim(&spec).unwrap();
                assert!(!oracle.is_empty());
                for (kl, dim) in oracle {
                    let report = complement_dims(b(n, d), curve(g), kl).unwrap();
                    assert_eq!(report.dim_complement, dim, "n={n} d={d} g={g} {kl:?}");
                }
            }
        }
    }
}

#[test]
fn rank2_closed_forms() {
    for g in 2..=8 {
        for d in 0..=1 {
            for t in -2 * g..=2 * g {
                assert_eq!(
                    rank2_nonempty(d, curve(g), t),
                    nonempty(b(2, d), curve(g), KL::new(t, 0)).unwrap()
                );
            }
            for t in 0..g {
                let general = complement_dims(b(2, d), curve(g), KL::new(t, 0)).unwrap();
                let closed = rank2_complement_dims(d, curve(g), t).unwrap();
                assert_eq!(closed.map(|c| c.dim), general.dim_complement);
                assert_eq!(closed.map(|c| c.codim), general.codim);
            }
            for p in enumerate_profiles(b(2, d), curve(g)).unwrap() {
                for t in -2 * g..=2 * g {
                    let kl_answer = is_kl_stable(&p, KL::new(t - 1, 1));
                    assert_eq!(t_stable(&p, t).unwrap(), kl_answer);
                }
            }
        }
    }
}

#[test]
fn rank3_table_matches_printed_cells() {
    for g in 2..=20 {
        let table = rank3_table(curve(g));
        for row in &table.rows {
            assert_eq!(
                (row.bound_2k_plus_l, row.bound_k_plus_2l),
                printed_rank3_bounds(g, row.d_mod_3),
                "g={g} d={}",
                row.d_mod_3
            );
        }
    }
}

#[test]
fn rank2_has_no_r3() {
    for g in 2..=8 {
        for k in -3 * g..=3 * g {
            for l in -3 * g..=3 * g {
                let f = classify_region(2, g, KL::new(k, l)).unwrap();
                assert!(!f.in_r3k && !f.in_r3l);
            }
        }
    }
}
