//! Finite hypervector spaces as explicit tables.

mod axioms;
mod field;
pub(crate) mod space;
pub(crate) mod subspace;

pub use axioms::{check_hvs_axioms, AxiomOutcome, AxiomReport, Law, Witness};
pub use field::FiniteField;
pub use space::{classical_hvs_from_field, HyperVectorSpace};
pub use subspace::{
    enumerate_subhyperspaces, is_subhyperspace, span, subhyperspace_witness, SubspaceWitness,
    VectorSubset, ENUMERATION_LIMIT,
};

pub(crate) fn check_table(
    what: &str,
    table: &[Vec<usize>],
    rows: usize,
    cols: usize,
    range: usize,
) -> crate::Result<()> {
    if table.len() != rows {
        return Err(crate::Error::Structure(format!(
            "{what} table has {} rows, expected {rows}",
            table.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(crate::Error::Structure(format!(
                "{what} table row {i} has {} cells, expected {cols}",
                row.len()
            )));
        }
        for (j, &cell) in row.iter().enumerate() {
            if cell >= range {
                return Err(crate::Error::Structure(format!(
                    "{what} cell ({i}, {j}) holds id {cell}, out of range 0..{range}"
                )));
            }
        }
    }
    Ok(())
}
