use alloc::vec::Vec;

use crate::circuit::{Circuit, RegisterRole};
use crate::Result;

/// Collects standalone circuits and splices them into a host. Each part's
/// logical qubits, in declaration order, go to the host qubits listed with it;
/// all parts share one pooled `scratch` ancilla register sized for the
/// hungriest part. Sound because every part returns its ancillas to `|0⟩`.
#[derive(Default)]
pub(crate) struct Assembly {
    parts: Vec<(Circuit, Vec<usize>)>,
}

impl Assembly {
    pub fn push(&mut self, part: Circuit, logical_to_host: Vec<usize>) {
        debug_assert_eq!(part.logical_qubits().len(), logical_to_host.len());
        self.parts.push((part, logical_to_host));
    }

    pub fn finish(self, host: &mut Circuit) -> Result<()> {
        let scratch = self
            .parts
            .iter()
            .map(|(p, _)| p.ancilla_count())
            .max()
            .unwrap_or(0);
        let pool: Vec<usize> = if scratch > 0 {
            host.add_register("scratch", scratch, RegisterRole::Ancilla)?
                .collect()
        } else {
            Vec::new()
        };
        for (part, logical) in &self.parts {
            let (mut li, mut ai) = (0, 0);
            let mut map = Vec::with_capacity(part.num_qubits());
            for reg in part.registers() {
                for _ in 0..reg.width {
                    match reg.role {
                        RegisterRole::Logical => {
                            map.push(logical[li]);
                            li += 1;
                        }
                        RegisterRole::Ancilla => {
                            map.push(pool[ai]);
                            ai += 1;
                        }
                    }
                }
            }
            host.append_mapped(part, &map)?;
        }
        Ok(())
    }
}
