//! Writes the sample spec files under `data/`.
//!
//! Run with `cargo run -p qg-cli --example export_data`.

use std::path::PathBuf;
use std::sync::Arc;

use qg_cli::schema::{
    self, dense_out, Construction, GroupSpec, IrrSpec, MagicSpec, Payload,
};
use qg_core::catalog::{
    cyclic, defining_corep, function_algebra, group_algebra, magic_block_example,
    monoid_bialgebra, sn_plus_presentation, suq2_presentation, symmetric, synthetic_nonkac,
};
use qg_core::tenscore::{c, CMatrix, Tolerance};

fn hopf(h: &qg_core::hopfcore::HopfData) -> Payload {
    Payload::Hopf(schema::hopf_spec(h))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    std::fs::create_dir_all(&dir)?;
    let s3 = symmetric(3)?;
    let mut files: Vec<(&str, Payload)> = vec![
        ("c_s3", hopf(&group_algebra(&s3)?)),
        ("c_z2_functions", hopf(&function_algebra(&cyclic(2)?)?)),
        ("cg_z5", hopf(&group_algebra(&cyclic(5)?)?)),
        ("monoid_bialgebra", hopf(&monoid_bialgebra()?)),
    ];

    let fs3 = Arc::new(function_algebra(&s3)?);
    let mut spec = schema::hopf_spec(&fs3);
    spec.coreps.insert("defining".into(), schema::corep_spec(&defining_corep(&s3, fs3.clone())?));
    files.push(("c_s3_functions", Payload::Hopf(spec)));

    let z3 = cyclic(3)?;
    files.push((
        "cg_z3",
        Payload::Group(GroupSpec {
            name: "Z3".into(),
            construction: Construction::GroupAlgebra,
            order: Some(3),
            labels: z3.labels().to_vec(),
            cayley: Some(z3.table().to_vec()),
            identity: Some(z3.identity()),
            inverse: Some((0..3).map(|a| z3.inverse(a)).collect()),
            permutations: None,
        }),
    ));
    files.push((
        "s3_permutations",
        Payload::Group(GroupSpec {
            name: "S3".into(),
            construction: Construction::FunctionAlgebra,
            order: Some(6),
            labels: Vec::new(),
            cayley: None,
            identity: None,
            inverse: None,
            permutations: Some(vec![vec![1, 0, 2], vec![1, 2, 0]]),
        }),
    ));

    let qs = synthetic_nonkac(&[(2, 3.0), (1, 1.0)])?;
    files.push((
        "nonkac",
        Payload::Irrdata(IrrSpec {
            name: "diag(3, 1/3) and a trivial block".into(),
            blocks: qs.qs().iter().map(|q| dense_out(&q.q)).collect(),
        }),
    ));

    files.push(("suq2_q2", Payload::Presentation(schema::presentation_spec(&suq2_presentation(2.0)?))));
    files.push(("sn_plus_3", Payload::Presentation(schema::presentation_spec(&sn_plus_presentation(3)?))));

    // p projects onto e₁, q onto (e₁ + e₂)/√2.
    let p = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let q = CMatrix::from_element(2, 2, c(0.5, 0.0));
    let u = magic_block_example(&p, &q, Tolerance::default())?;
    files.push((
        "magic4_rank1",
        Payload::Magic(MagicSpec {
            name: "block magic unitary, rank-one p and q".into(),
            entries: u.iter().map(|row| row.iter().map(dense_out).collect()).collect(),
        }),
    ));

    for (name, payload) in files {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, schema::to_json(payload))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
