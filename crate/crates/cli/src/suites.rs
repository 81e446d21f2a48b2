use serde_json::json;
use uea_core::bgg::{
    canonical_tau, check_algebra_map, check_coalgebra_map, roundtrip_check,
    twisted_tensor_acyclicity, Direction,
};
use uea_core::exactlin::scalar;
use uea_core::exactlin::{GenId, LinComb};
use uea_core::hpt::{check_abelian_transfer, check_two_step_perturbation};
use uea_core::io::Input;
use uea_core::linfty::{
    check_linfty, check_module, check_morphism, LInftyAlgebra, LInftyModule, LInftyMorphism,
};
use uea_core::permutahedra::{
    check_hv_contraction, check_hv_functoriality, verify_permutahedron, Contractions,
};
use uea_core::tableaux::{
    all_standard_tableaux, bijection_count, check_embedding, decomposition_dims, GradedDim,
    TComplex,
};
use uea_core::uea::morphisms::{first_component_check, higher_components_vanish};
use uea_core::uea::{
    alt_bracket_check, check_u_morphism, closed_form_m2_check, compute_products,
    coproduct_strictness_check, involution_check, pbw_compare, stasheff_check,
    truncation_agreement_check, AInftyStructure, Caps, UMorphism,
};
use uea_core::{Error, Result};

use crate::report::{json as to_json, run, CheckRecord, Verdict};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub arity_cap: usize,
    pub weight_cap: usize,
    pub n_cap: usize,
}

impl Limits {
    fn caps(&self) -> Result<Caps> {
        Caps::new(self.arity_cap, self.weight_cap)
    }
}

/// A check that could not even start, recorded as an error.
fn failed_setup(name: &str, e: Error) -> Vec<CheckRecord> {
    vec![run(name, || Err(e))]
}

fn structure(l: &LInftyAlgebra, caps: Caps) -> Result<AInftyStructure> {
    compute_products(l, caps)
}

pub fn validate(input: &Input, lim: Limits) -> Vec<CheckRecord> {
    let w = lim.weight_cap;
    let mut out = vec![run("linfty", || {
        Ok(Verdict::from_outcome(check_linfty(&input.algebra, w)))
    })];
    if let Some(m) = &input.module {
        out.push(run("module", || {
            Ok(Verdict::from_outcome(check_module(m, w)))
        }));
    }
    if let Some(phi) = &input.morphism {
        out.push(run("target_linfty", || {
            Ok(Verdict::from_outcome(check_linfty(&phi.target, w)))
        }));
        out.push(run("morphism", || {
            Ok(Verdict::from_outcome(check_morphism(phi, w)))
        }));
    }
    out
}

pub fn stasheff(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    vec![run("stasheff", || {
        let a = structure(l, lim.caps()?)?;
        Ok(Verdict::from_outcome(stasheff_check(&a)?))
    })]
}

pub fn pbw(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    vec![
        run("pbw", || {
            Ok(Verdict::from_outcome(pbw_compare(l, lim.weight_cap)?))
        }),
        run("closed_form_m2", || {
            let a = structure(l, Caps::new(2, 2)?)?;
            Ok(Verdict::from_outcome(closed_form_m2_check(&a)?))
        }),
    ]
}

fn per_arity(
    l: &LInftyAlgebra,
    lim: Limits,
    prefix: &str,
    check: fn(&AInftyStructure, usize) -> Result<uea_core::uea::Outcome>,
) -> Vec<CheckRecord> {
    let a = match lim.caps().and_then(|c| structure(l, c)) {
        Ok(a) => a,
        Err(e) => return failed_setup(prefix, e),
    };
    (1..=lim.arity_cap)
        .map(|n| {
            run(format!("{prefix}_{n}"), || {
                Ok(Verdict::from_outcome(check(&a, n)?))
            })
        })
        .collect()
}

pub fn alt(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    per_arity(l, lim, "alt", alt_bracket_check)
}

pub fn involution(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    per_arity(l, lim, "involution", involution_check)
}

pub fn coproduct(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    per_arity(l, lim, "coproduct", coproduct_strictness_check)
}

/// Runs on the input's morphism, or on the identity of the algebra.
pub fn morphism(input: &Input, lim: Limits) -> Vec<CheckRecord> {
    let phi = input
        .morphism
        .clone()
        .unwrap_or_else(|| LInftyMorphism::identity(&input.algebra));
    let mut out = vec![run("morphism_linfty", || {
        Ok(Verdict::from_outcome(check_morphism(&phi, lim.weight_cap)))
    })];
    let pair = lim
        .caps()
        .and_then(|c| Ok((structure(&phi.source, c)?, structure(&phi.target, c)?)));
    let (s, t) = match pair {
        Ok(p) => p,
        Err(e) => {
            out.extend(failed_setup("u_morphism", e));
            return out;
        }
    };
    let u = match UMorphism::new(&s, &t, &phi) {
        Ok(u) => u,
        Err(e) => {
            out.extend(failed_setup("u_morphism", e));
            return out;
        }
    };
    out.push(run("u_morphism", || {
        Ok(Verdict::from_outcome(check_u_morphism(&u)?))
    }));
    out.push(run("first_component", || {
        Ok(Verdict::from_outcome(first_component_check(&u)?))
    }));
    if phi.is_strict() {
        out.push(run("higher_components_vanish", || {
            Ok(Verdict::from_outcome(higher_components_vanish(&u)?))
        }));
    }
    out
}

pub fn truncation(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    vec![run("truncation", || {
        Ok(Verdict::from_outcome(truncation_agreement_check(
            l,
            lim.caps()?,
        )?))
    })]
}

fn complex(names: &[&str], degrees: &[i32], d: &[(GenId, GenId, i64)]) -> Result<LInftyAlgebra> {
    let mut v = LInftyAlgebra::abelian(
        names.iter().map(|s| s.to_string()).collect(),
        degrees.to_vec(),
    )?;
    for &(i, j, c) in d {
        v.set_bracket(&[i], LinComb::term(j, scalar::int(c)))?;
    }
    Ok(v)
}

/// Complexes `V` of dimension at most two, covering every parity pattern.
fn small_complexes() -> Result<Vec<LInftyAlgebra>> {
    Ok(vec![
        complex(&["x"], &[0], &[])?,
        complex(&["p"], &[1], &[])?,
        complex(&["x", "y"], &[0, 0], &[])?,
        complex(&["p", "q"], &[1, 1], &[])?,
        complex(&["a", "b"], &[0, 1], &[(0, 1, 1)])?,
        complex(&["u", "t"], &[-1, 0], &[(0, 1, 3)])?,
        complex(&["x", "p"], &[0, 1], &[])?,
    ])
}

fn chain_maps() -> Result<Vec<LInftyMorphism>> {
    let v = complex(&["a", "b"], &[0, 1], &[(0, 1, 1)])?;
    let w = complex(&["x", "y"], &[0, 1], &[(0, 1, 2)])?;
    let e = complex(&["x", "y"], &[0, 0], &[])?;
    let f = complex(&["x", "p"], &[0, 1], &[])?;
    Ok(vec![
        LInftyMorphism::strict(
            &v,
            &w,
            &[
                LinComb::term(0, scalar::int(2)),
                LinComb::term(1, scalar::int(4)),
            ],
        )?,
        LInftyMorphism::strict(
            &e,
            &e,
            &[
                LinComb::from_iter([(0, scalar::int(1)), (1, scalar::int(3))]),
                LinComb::from_iter([(0, scalar::int(2)), (1, scalar::int(-1))]),
            ],
        )?,
        LInftyMorphism::strict(
            &f,
            &f,
            &[
                LinComb::term(0, scalar::ratio(1, 2)),
                LinComb::term(1, scalar::int(-5)),
            ],
        )?,
    ])
}

pub fn theorem1(lim: Limits) -> Vec<CheckRecord> {
    let rank = lim.n_cap;
    let (vs, maps) = match small_complexes().and_then(|v| Ok((v, chain_maps()?))) {
        Ok(p) => p,
        Err(e) => return failed_setup("theorem1", e),
    };
    let cs = Contractions::standard();
    let mut out = Vec::new();
    for v in &vs {
        let name = format!("hv_contraction[{}]", v.names().join(","));
        out.push(run(name, || {
            Ok(Verdict::from_message(
                check_hv_contraction(v, &cs, rank)?.err(),
            ))
        }));
    }
    for phi in &maps {
        let name = format!(
            "hv_functoriality[{}->{}]",
            phi.source.names().join(","),
            phi.target.names().join(",")
        );
        out.push(run(name, || {
            Ok(Verdict::from_message(
                check_hv_functoriality(phi, &cs, rank)?.err(),
            ))
        }));
    }
    out
}

pub fn perturbation(l: &LInftyAlgebra, lim: Limits) -> Vec<CheckRecord> {
    let rank = lim.weight_cap.min(lim.arity_cap);
    let mut out = vec![run("two_step_perturbation", || {
        Ok(Verdict::from_message(check_two_step_perturbation(l, rank)?))
    })];
    if l.max_arity() <= 1 {
        out.push(run("abelian_transfer", || {
            Ok(Verdict::from_message(check_abelian_transfer(l, rank)?))
        }));
    }
    out
}

/// `Σ_d d!·S(n,d)` from the Stirling recurrence, independent of the face
/// enumeration.
pub fn ordered_partitions(n: usize) -> Vec<usize> {
    let mut s = vec![vec![0usize; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for d in 1..=i {
            s[i][d] = d * s[i - 1][d] + s[i - 1][d - 1];
        }
    }
    let mut fact = 1;
    (0..=n)
        .map(|d| {
            if d > 0 {
                fact *= d;
            }
            fact * s[n][d]
        })
        .collect()
}

pub fn permutahedron_n(n: usize) -> CheckRecord {
    run(format!("permutahedron_{n}"), || {
        let r = verify_permutahedron(n, n <= 4)?;
        let oracle = ordered_partitions(n);
        let counts_ok = (1..=n)
            .all(|d| r.faces_by_blocks.get(&d).copied().unwrap_or(0) == oracle[d])
            && r.total_faces == oracle.iter().sum::<usize>();
        Ok(Verdict::expect(r.all_pass() && counts_ok, to_json(&r)))
    })
}

pub fn permutahedron(lim: Limits) -> Vec<CheckRecord> {
    (1..=lim.n_cap).map(permutahedron_n).collect()
}

fn t_complexes(n: usize) -> CheckRecord {
    run(format!("t_complexes_{n}"), || {
        for t in all_standard_tableaux(n) {
            let c = TComplex::new(&t);
            for (j, _) in c.basis() {
                let dd = c.boundary(&j)?.try_apply(|k| c.boundary(k))?;
                if !dd.is_zero() {
                    return Ok(Verdict::Fail {
                        counterexample: Some(json!({"tableau": t.rows(), "subset": j})),
                        details: None,
                    });
                }
            }
            if let Some(m) = c.check_contraction()? {
                return Ok(Verdict::Fail {
                    counterexample: Some(json!({"tableau": t.rows(), "failure": m})),
                    details: None,
                });
            }
        }
        Ok(Verdict::Pass(None))
    })
}

pub fn tableaux_n(n: usize, dims: &[GradedDim]) -> Vec<CheckRecord> {
    let mut out = vec![
        run(format!("bijection_{n}"), || {
            let b = bijection_count(n)?;
            Ok(Verdict::expect(
                b.bijective && b.pairs == b.semistandard,
                to_json(&b),
            ))
        }),
        t_complexes(n),
    ];
    for &d in dims {
        let tag = format!("{n}_{}+{}", d.even, d.odd);
        out.push(run(format!("decomposition_{tag}"), || {
            let r = decomposition_dims(n, d);
            Ok(Verdict::expect(r.matches(), to_json(&r)))
        }));
        out.push(run(format!("embedding_{tag}"), || {
            let r = check_embedding(n, d)?;
            let ok = r.injective() && r.chain_map() && r.rank == r.cobar_dim;
            Ok(Verdict::expect(
                ok,
                json!({"rank": r.rank, "expected": r.expected, "cobar_dim": r.cobar_dim}),
            ))
        }));
    }
    out
}

pub fn tableaux(lim: Limits) -> Vec<CheckRecord> {
    let dims = [GradedDim::new(2, 0), GradedDim::new(1, 1)];
    (1..=lim.n_cap).flat_map(|n| tableaux_n(n, &dims)).collect()
}

pub fn bgg(input: &Input, lim: Limits) -> Vec<CheckRecord> {
    let l = &input.algebra;
    let w = lim.arity_cap.min(lim.weight_cap);
    let a = match lim.caps().and_then(|c| structure(l, c)) {
        Ok(a) => a,
        Err(e) => return failed_setup("bgg", e),
    };
    let mut out = vec![
        run("tau_equation", || {
            Ok(Verdict::from_outcome(canonical_tau(l, w).check(&a)?))
        }),
        run("coalgebra_map", || {
            Ok(Verdict::from_outcome(check_coalgebra_map(&a, w)?))
        }),
        run("algebra_map", || {
            Ok(Verdict::from_outcome(check_algebra_map(&a, w)?))
        }),
        run("twisted_tensor", || {
            let r = twisted_tensor_acyclicity(l, lim.weight_cap)?;
            Ok(Verdict::expect(r.is_k(), to_json(&r)))
        }),
    ];
    let modules = match &input.module {
        Some(m) => Ok(vec![("input", m.clone())]),
        None => LInftyModule::trivial(l)
            .and_then(|t| Ok(vec![("trivial", t), ("adjoint", LInftyModule::adjoint(l)?)])),
    };
    let modules = match modules {
        Ok(m) => m,
        Err(e) => {
            out.extend(failed_setup("roundtrip", e));
            return out;
        }
    };
    for (tag, m) in &modules {
        for (dir, dname) in [(Direction::FG, "fg"), (Direction::GF, "gf")] {
            out.push(run(format!("roundtrip_{dname}[{tag}]"), || {
                let r = roundtrip_check(&a, m, dir)?;
                Ok(Verdict::expect(r.passed(), to_json(&r)))
            }));
        }
    }
    out
}

/// Every suite applicable to the given input; algebra-free suites always run.
pub fn all(input: Option<&Input>, lim: Limits) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    if let Some(input) = input {
        let l = &input.algebra;
        out.extend(validate(input, lim));
        out.extend(stasheff(l, lim));
        if l.is_dg_lie() {
            out.extend(pbw(l, lim));
            out.extend(truncation(l, lim));
        }
        out.extend(alt(l, lim));
        out.extend(involution(l, lim));
        out.extend(coproduct(l, lim));
        out.extend(morphism(input, lim));
        out.extend(perturbation(l, lim));
        out.extend(bgg(input, lim));
    }
    out.extend(theorem1(lim));
    out.extend(permutahedron(lim));
    out.extend(tableaux(lim));
    out
}
