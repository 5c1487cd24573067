//! JSON report types. Field order is fixed by the struct definitions and
//! every list is in the library's canonical order, so reports are
//! byte-stable.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use blockcert::chartab::cache::TableFile;
use blockcert::chartab::CharacterTable;
use blockcert::descent::{self, BrauerFeitReport, FpForm};
use blockcert::field::FiniteField;
use blockcert::gf::GfElem;
use blockcert::isotypy::IsotypyCertificate;
use blockcert::perm::Group;
use blockcert::session::Session;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report<T> {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub result: T,
}

pub fn wrap<T: Serialize>(command: &str, result: T) -> Report<T> {
    Report {
        schema_version: SCHEMA_VERSION,
        tool: "blocktool".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        result,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupInfo {
    pub name: String,
    pub hash: String,
    pub order: usize,
    pub degree: usize,
}

impl GroupInfo {
    pub fn of(g: &Group) -> Self {
        GroupInfo {
            name: g.name().to_string(),
            hash: g.hash().to_string(),
            order: g.order(),
            degree: g.degree(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassInfo {
    pub index: usize,
    pub representative: String,
    pub size: usize,
    pub order: u64,
    pub centralizer_order: usize,
}

#[derive(Serialize)]
pub struct ClassesReport {
    pub group: GroupInfo,
    pub classes: Vec<ClassInfo>,
}

pub fn classes(g: &Group) -> ClassesReport {
    ClassesReport {
        group: GroupInfo::of(g),
        classes: g
            .classes()
            .iter()
            .enumerate()
            .map(|(index, c)| ClassInfo {
                index,
                representative: g.element(c.representative).to_string(),
                size: c.size,
                order: c.rep_order,
                centralizer_order: g.order() / c.size,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct ChartableReport {
    pub group: GroupInfo,
    pub degrees: Vec<u64>,
    pub table: TableFile,
}

pub fn chartable(t: &CharacterTable) -> ChartableReport {
    ChartableReport {
        group: GroupInfo::of(t.group()),
        degrees: (0..t.len()).map(|i| t.degree(i)).collect(),
        table: TableFile::from_table(t),
    }
}

fn digest<T: Serialize>(v: &T) -> String {
    let bytes = serde_json::to_vec(v).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

fn gf_coords<F: FiniteField<Elem = GfElem>>(f: &F, v: &[GfElem]) -> Vec<Vec<u64>> {
    v.iter().map(|x| f.prime_coords(x)).collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockInfo {
    pub index: usize,
    pub characters: Vec<usize>,
    pub degrees: Vec<u64>,
    pub defect: u32,
    pub defect_group: Vec<String>,
    pub sigma_image: usize,
    pub orbit_length: usize,
    /// SHA-256 of the exact class coefficients in JSON form.
    pub idempotent_digest: String,
    /// Residue of the idempotent on each class, as F_p-coordinates.
    pub residue: Vec<Vec<u64>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlocksReport {
    pub group: GroupInfo,
    pub prime: u64,
    pub prime_divides_order: bool,
    pub conductor: u64,
    pub residue_modulus: Vec<u64>,
    pub blocks: Vec<BlockInfo>,
    pub orbits: Vec<Vec<usize>>,
}

pub fn blocks(s: &Session) -> blockcert::Result<BlocksReport> {
    let sys = &s.system;
    let g = &s.group;
    let mut out = Vec::new();
    for (b, blk) in sys.blocks.iter().enumerate() {
        let dg = s.defect_groups(b)?;
        out.push(BlockInfo {
            index: b,
            characters: blk.irr.clone(),
            degrees: blk.irr.iter().map(|&i| s.table.degree(i)).collect(),
            defect: blk.defect,
            defect_group: dg[0].elements.iter().map(|&x| g.element(x).to_string()).collect(),
            sigma_image: sys.sigma[b],
            orbit_length: sys.orbit_length(b),
            idempotent_digest: digest(&blk.coeffs),
            residue: gf_coords(&sys.field, &blk.residue),
        });
    }
    Ok(BlocksReport {
        group: GroupInfo::of(g),
        prime: s.p,
        prime_divides_order: g.order() as u64 % s.p == 0,
        conductor: s.conductor(),
        residue_modulus: s.local.residue_field().modulus().to_vec(),
        blocks: out,
        orbits: sys.galois_orbits(),
    })
}

pub fn isotypy_summary(c: &IsotypyCertificate) -> String {
    let mut line = format!(
        "isotypy {} p={} block {} -> {} (n={}): {:?}; |P| = {}, signs {}, fusion {}, {} cyclic subgroups",
        c.group,
        c.prime,
        c.block,
        c.target_block,
        c.power,
        c.verdict,
        c.defect_group.len(),
        if c.signs_positive { "all +1" } else { "not all +1" },
        c.fusion.status,
        c.cyclic.len()
    );
    if let Some(w) = &c.witness {
        line.push_str(&format!("\nwitness [{}]: {}", w.check, w.detail));
    }
    line
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CentralIsoInfo {
    pub power: u64,
    pub source_block: usize,
    pub target_block: usize,
    /// Least valuation among the exact solution coefficients.
    pub min_valuation: Option<i64>,
    /// Matrix entries as F_p-coordinates in the residue field.
    pub matrix: Vec<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FpformReport {
    pub group: GroupInfo,
    pub prime: u64,
    pub residue_modulus: Vec<u64>,
    pub block: usize,
    pub characters: usize,
    pub center_dimension: usize,
    pub center_classes: Vec<usize>,
    pub central_iso: CentralIsoInfo,
    pub theta_matrix: Vec<Vec<Vec<u64>>>,
    pub fp_form: FpForm,
    pub basis_independent: bool,
    pub brauer_feit: BrauerFeitReport,
}

pub fn fpform(s: &Session, b: usize) -> blockcert::Result<FpformReport> {
    if b >= s.system.len() {
        return Err(blockcert::Error::Parse(format!(
            "block index {b} out of range (0..{})",
            s.system.len()
        )));
    }
    let r = descent::descend(&s.system, &s.local, b)?;
    let f = &s.system.field;
    let mat = |m: &[Vec<GfElem>]| m.iter().map(|row| gf_coords(f, row)).collect::<Vec<_>>();
    Ok(FpformReport {
        group: GroupInfo::of(&s.group),
        prime: s.p,
        residue_modulus: s.local.residue_field().modulus().to_vec(),
        block: b,
        characters: s.system.blocks[b].irr.len(),
        center_dimension: r.center.dimension(),
        center_classes: r.center.classes.clone(),
        central_iso: CentralIsoInfo {
            power: r.iso.power,
            source_block: r.iso.source_block,
            target_block: r.iso.target_block,
            min_valuation: r.iso.min_valuation,
            matrix: mat(&r.iso.matrix),
        },
        theta_matrix: mat(&r.theta.matrix),
        fp_form: r.form,
        basis_independent: r.basis_independent,
        brauer_feit: r.brauer_feit,
    })
}
