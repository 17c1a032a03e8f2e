//! End-to-end acceptance suite.
//!
//! Every criterion prints exactly one `PASS — …` / `FAIL — …` line; all
//! results are collected before the final assertion so a single failure
//! does not hide the others.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mvb_core::duality::{self, SignedRelabeling, Word};
use mvb_core::fpgroup;
use mvb_core::lattice::{trivial_double, trivial_triple, AxisIndex, Sign};
use mvb_core::paircalc::{self, DualAElem, DualBElem, ElemD, TangentDualElem, TangentVecElem};

const CAP: usize = 100_000;

struct Ledger {
    results: Vec<(String, bool)>,
}

impl Ledger {
    fn new() -> Self {
        Ledger {
            results: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, pass: bool) {
        println!("{} — {name}", if pass { "PASS" } else { "FAIL" });
        self.results.push((name.to_string(), pass));
    }

    fn finish(self) {
        let failed: Vec<&str> = self
            .results
            .iter()
            .filter(|(_, p)| !p)
            .map(|(n, _)| n.as_str())
            .collect();
        assert!(failed.is_empty(), "failed criteria: {failed:?}");
    }
}

fn ivec(r: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| r.gen_range(-3..=3) as f64).collect()
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[test]
fn acceptance() {
    let mut a = Ledger::new();

    // 1. presented VB2 has order 6, fast
    {
        let t = Instant::now();
        let order = fpgroup::group_order(&fpgroup::preset("vb2").unwrap(), CAP).unwrap();
        a.check(
            "fpgroup: presented 2-fold group has order 6 in < 1 s",
            order == 6 && t.elapsed() < Duration::from_secs(1),
        );
    }

    // 2. presented VB3 has order 72 with a small coset table, fast
    {
        let t = Instant::now();
        let vb3 = fpgroup::preset("vb3").unwrap();
        let table = fpgroup::coset_enumerate(&vb3, &[], CAP).unwrap();
        a.check(
            "fpgroup: presented 3-fold group has order 72, coset table peak ≤ 10³, in < 1 s",
            table.rows.len() == 72
                && table.peak_cosets <= 1000
                && t.elapsed() < Duration::from_secs(1),
        );
    }

    // 3. the order-12 normal subgroup and its S3 quotient
    {
        let t = Instant::now();
        let vb3 = fpgroup::preset("vb3").unwrap();
        let gens: Vec<Vec<fpgroup::Letter>> = ["X Y X Z", "Y Z Y X", "Z X Z Y"]
            .iter()
            .map(|w| vb3.parse_word(w).unwrap())
            .collect();
        let index = fpgroup::subgroup_index(&vb3, &gens, CAP).unwrap();
        let normal = fpgroup::is_normal(&vb3, &gens, CAP).unwrap();
        let (q_order, nonabelian) = fpgroup::quotient_order(&vb3, &gens, CAP).unwrap();
        a.check(
            "fpgroup: ⟨XYXZ, YZYX, ZXZY⟩ has index 6 (order 12), is normal, quotient nonabelian of order 6, in < 1 s",
            index == 6
                && normal
                && q_order == 6
                && nonabelian
                && t.elapsed() < Duration::from_secs(1),
        );
    }

    // 4. matrix certificate: (XYZ)^4 is not a consequence of the braid
    //    relators
    {
        let cert = fpgroup::independence_certificate().unwrap();
        a.check(
            "fpgroup: independence certificate — relators act as identity, (XYZ)⁴ does not",
            cert.relators_identity && !cert.xyz4_identity && cert.pass,
        );
    }

    // 5. concrete closures have orders 6 and 72, and the presented relators
    //    all act as the identity
    {
        let t = Instant::now();
        let c2 = duality::closure(2, CAP).unwrap();
        let c3 = duality::closure(3, CAP).unwrap();
        let vb3 = fpgroup::preset("vb3").unwrap();
        let relators_act_trivially = vb3.relators.iter().all(|rel| {
            let axes: Vec<AxisIndex> = rel.iter().map(|l| l.unsigned_abs() as u8).collect();
            duality::verify_relation(3, &Word::new(axes)).unwrap()
        });
        a.check(
            "duality: closure orders 6 (n=2) and 72 (n=3), presented relators act as identity, in < 10 s",
            c2.order() == 6
                && c3.order() == 72
                && relators_act_trivially
                && t.elapsed() < Duration::from_secs(10),
        );
    }

    // 6. the distinguished elements: VHV is the signed flip; P's and Q's at
    //    n = 3 behave as stated
    {
        let vhv = SignedRelabeling::from_word(2, &[2, 1, 2]).unwrap();
        let is_signed_flip = vhv.slot_image(0b01) == 0b10
            && vhv.slot_image(0b10) == 0b01
            && vhv.slot_image(0b11) == 0b11
            && (0b01..=0b11u32).all(|m| vhv.dual_inc(m) == 0)
            && vhv.sign(0b11) == Sign::MINUS
            && vhv.sign(0b01) == Sign::PLUS
            && vhv.sign(0b10) == Sign::PLUS;

        // `special_elements` itself verifies P_X = YZY = ZYZ etc.
        let specials = duality::special_elements(3).unwrap();
        let orders_ok = ["P_X", "P_Y", "P_Z"]
            .iter()
            .all(|k| specials[*k].order() == 2)
            && ["Q_X", "Q_Y", "Q_Z"]
                .iter()
                .all(|k| specials[*k].order() == 3);
        // rightmost factor acts first, so Q_Z Q_Y Q_X applies Q_X first
        let prod = |names: [&str; 3]| {
            let g = duality::compose(&specials[names[0]], &specials[names[1]]).unwrap();
            duality::compose(&g, &specials[names[2]]).unwrap()
        };
        let q_products_trivial =
            prod(["Q_Z", "Q_Y", "Q_X"]).is_identity() && prod(["Q_X", "Q_Y", "Q_Z"]).is_identity();
        let xyz4 = duality::verify_relation(3, &Word::new(vec![1, 2, 3]).pow(4)).unwrap();
        a.check(
            "duality: VHV = flip with core sign −1; ord(P)=2, ord(Q)=3, Q-products trivial, (XYZ)⁴ = 1 by action",
            is_signed_flip && orders_ok && q_products_trivial && xyz4,
        );
    }

    // 7. the relation family holds at n = 4 up to k = 4
    {
        let reports = duality::verify_conjecture(4, 4).unwrap();
        a.check(
            "duality: every (X_{i1}…X_{ik})^{k+1} with distinct indices holds at n = 4, k ≤ 4",
            !reports.is_empty() && reports.iter().all(|r| r.holds),
        );
    }

    // 8. dual_axis reproduces the known slot contents
    {
        let d2 = duality::dual_axis(&trivial_double(2, 3, 2), 2).unwrap();
        let n2_ok = d2.slot(0b01).display_name() == "A"
            && d2.slot(0b10).display_name() == "C*"
            && d2.slot(0b11).display_name() == "B*";
        let d3 = duality::dual_axis(&trivial_triple(1), 1).unwrap();
        let n3_ok = d3.ultracore().display_name() == "E1*"
            && d3.slot(0b001).display_name() == "W*"
            && d3.slot(0b010).display_name() == "E2"
            && d3.slot(0b100).display_name() == "E3"
            && d3.slot(0b011).display_name() == "C2*"
            && d3.slot(0b101).display_name() == "C3*"
            && d3.slot(0b110).display_name() == "C1";
        a.check(
            "duality/lattice: dual slot contents at n = 2 (A, C*, B*) and n = 3 (ultracore E1*)",
            n2_ok && n3_ok,
        );
    }

    // 9. the duals pairing: exact well-definedness, closed form, full-rank
    //    Gram matrix, and the Z maps
    {
        let dvb = paircalc::TrivDvb::new(2, 3, 2);
        let mut r = ChaCha8Rng::seed_from_u64(0);
        let mut exact = true;
        for _ in 0..1000 {
            let (av, bv, gv) = (ivec(&mut r, 2), ivec(&mut r, 3), ivec(&mut r, 2));
            let phi = DualAElem {
                a: av.clone(),
                beta: ivec(&mut r, 3),
                gamma: gv.clone(),
            };
            let psi = DualBElem {
                alpha: ivec(&mut r, 2),
                b: bv.clone(),
                gamma: gv,
            };
            let d = ElemD {
                a: av,
                b: bv,
                c: ivec(&mut r, 2),
            };
            let via_lift = paircalc::pair_duals(&phi, &psi, &d).unwrap();
            exact &= via_lift == paircalc::pair_duals_closed(&phi, &psi);
        }
        let gram_ok = paircalc::nondegeneracy_check(&dvb).pass;
        let phi = DualAElem {
            a: vec![1.0, -2.0],
            beta: vec![3.0, 0.0, 1.0],
            gamma: vec![2.0, 2.0],
        };
        let z_example = paircalc::z_a(&phi)
            == DualAElem {
                a: vec![-1.0, 2.0],
                beta: phi.beta.clone(),
                gamma: phi.gamma.clone(),
            };
        let za = paircalc::z_a_matrix(&dvb);
        let zb = paircalc::z_b_matrix(&dvb);
        let transpose_ok = (0..za.len()).all(|i| (0..za.len()).all(|j| za[j][i] == zb[i][j]));
        a.check(
            "paircalc: ⟦,⟧ exact on 10³ integer trials, Gram full rank, Z_A = (a,ψ,κ)↦(−a,ψ,κ), (Z_A)ᵀ = Z_B",
            exact && gram_ok && z_example && transpose_ok,
        );
    }

    // 10. tangent pairing, its special cases, both axiom suites, the
    //     reversal identity, and the antisymplectomorphism
    {
        let (dm, dv) = (2usize, 3usize);
        let mut r = ChaCha8Rng::seed_from_u64(1);
        let (x, e, e1, e2) = (
            ivec(&mut r, dm),
            ivec(&mut r, dv),
            ivec(&mut r, dv),
            ivec(&mut r, dv),
        );
        let (phi, phi1, phi2) = (ivec(&mut r, dv), ivec(&mut r, dv), ivec(&mut r, dv));
        let z = |k: usize| vec![0.0; k];
        let tp =
            |xx: &TangentDualElem, xi: &TangentVecElem| paircalc::tangent_pairing(xx, xi).unwrap();
        // core against core vanishes
        let s1 = tp(
            &TangentDualElem {
                x: z(dm),
                phi: z(dv),
                psi: phi.clone(),
            },
            &TangentVecElem {
                x: z(dm),
                v: z(dv),
                w: e.clone(),
            },
        ) == 0.0;
        // zero sections pair to zero
        let s2 = tp(
            &TangentDualElem {
                x: z(dm),
                phi: phi.clone(),
                psi: z(dv),
            },
            &TangentVecElem {
                x: z(dm),
                v: e.clone(),
                w: z(dv),
            },
        ) == 0.0;
        // zero section against a core element recovers ⟨φ, e⟩
        let s3 = tp(
            &TangentDualElem {
                x: z(dm),
                phi: phi.clone(),
                psi: z(dv),
            },
            &TangentVecElem {
                x: z(dm),
                v: z(dv),
                w: e.clone(),
            },
        ) == dot(&phi, &e);
        // vertical tangents pair crosswise
        let s4 = tp(
            &TangentDualElem {
                x: z(dm),
                phi: phi1.clone(),
                psi: phi2.clone(),
            },
            &TangentVecElem {
                x: z(dm),
                v: e1.clone(),
                w: e2.clone(),
            },
        ) == dot(&phi1, &e2) + dot(&phi2, &e1);
        let _ = x;

        let dvb = paircalc::TrivDvb::new(2, 3, 2);
        let axioms_duals = paircalc::pairing_axioms_check(
            "pair_duals_axioms",
            &paircalc::pair_duals_shape(&dvb),
            paircalc::pair_duals_generic,
            0,
            1000,
        )
        .pass;
        let axioms_tangent = paircalc::pairing_axioms_check(
            "tangent_pairing_axioms",
            &paircalc::tangent_pairing_shape(dm, dv),
            paircalc::tangent_pairing_generic,
            0,
            1000,
        )
        .pass;
        let mx38 = paircalc::mx38_check(dm, dv, 0, 1000);
        let antisymplecto =
            (1..=3).all(|m| (1..=3).all(|v| paircalc::antisymplecto_check(m, v).pass));
        a.check(
            "paircalc: tangent pairing special cases exact, axioms (i)–(v) for both pairings, reversal identity ≤ 1e-12, JᵀΩJ = −Ω for dims ≤ 3",
            s1 && s2 && s3 && s4
                && axioms_duals
                && axioms_tangent
                && mx38.pass
                && mx38.max_residual <= 1e-12
                && antisymplecto,
        );
    }

    // 11. the numeric oracle agrees with the symbolic action on all 3⁶
    //     words over {skip, H, V}
    {
        let t = Instant::now();
        let mut agree = true;
        for code in 0..3usize.pow(6) {
            let mut word = Vec::new();
            let mut c = code;
            for _ in 0..6 {
                match c % 3 {
                    1 => word.push(1u8),
                    2 => word.push(2u8),
                    _ => {}
                }
                c /= 3;
            }
            let numeric = paircalc::oracle_signed_relabeling((2, 3, 2), &word).unwrap();
            let symbolic = SignedRelabeling::from_word(2, &word).unwrap();
            agree &= numeric == symbolic;
        }
        a.check(
            "cross-module: numeric oracle = symbolic action on all 729 words of length ≤ 6 (n = 2) in < 30 s",
            agree && t.elapsed() < Duration::from_secs(30),
        );
    }

    // 12. cornering: the identity holds on seeded trials and the cotangent
    //     completion has the right lower faces
    {
        let dvb = paircalc::TrivDvb::new(2, 3, 2);
        let identity_ok = paircalc::cornering_check(&dvb, 0, 1000).unwrap().pass;
        let b = trivial_double(2, 3, 2);
        let completion = duality::cotangent_completion(&b, 4);
        let base_face = completion.face_with_axes(&[1, 2]).unwrap();
        let faces_ok = base_face.same_decorations(&b)
            && (1..=2).all(|i| {
                duality::lower_face(&completion, i)
                    .unwrap()
                    .same_decorations(&duality::dual_axis(&b, i).unwrap())
            });
        a.check(
            "cornering: difference identity exact on 10³ trials; cotangent completion's lower faces are D and its duals",
            identity_ok && faces_ok,
        );
    }

    a.finish();
}
