use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::mesh::SurfaceMesh;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeshFormat {
    Obj,
    Ply,
    Csv,
}

impl MeshFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MeshFormat::Obj => "obj",
            MeshFormat::Ply => "ply",
            MeshFormat::Csv => "csv",
        }
    }
}

impl FromStr for MeshFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            "csv" => Ok(MeshFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown mesh format {other:?}"))),
        }
    }
}

/// Writes the mesh to `path`. OBJ is text with 1-based quad faces, PLY is
/// binary little-endian, CSV has one row per vertex.
pub fn export_mesh(mesh: &SurfaceMesh, format: MeshFormat, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let written = match format {
        MeshFormat::Obj => write_obj(mesh, &mut out),
        MeshFormat::Ply => write_ply(mesh, &mut out),
        MeshFormat::Csv => return write_csv(mesh, out),
    };
    written.and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
}

pub fn write_obj<W: Write>(mesh: &SurfaceMesh, out: &mut W) -> std::io::Result<()> {
    for v in &mesh.vertices {
        writeln!(out, "v {:.14e} {:.14e} {:.14e}", v.x, v.y, v.z)?;
    }
    for n in &mesh.normals {
        writeln!(out, "vn {:.14e} {:.14e} {:.14e}", n.x, n.y, n.z)?;
    }
    for q in &mesh.faces {
        let [a, b, c, d] = q.map(|i| i + 1);
        writeln!(out, "f {a}//{a} {b}//{b} {c}//{c} {d}//{d}")?;
    }
    Ok(())
}

pub fn write_ply<W: Write>(mesh: &SurfaceMesh, out: &mut W) -> std::io::Result<()> {
    write!(
        out,
        "ply\nformat binary_little_endian 1.0\nelement vertex {}\n\
         property double x\nproperty double y\nproperty double z\n\
         property double nx\nproperty double ny\nproperty double nz\n\
         element face {}\nproperty list uchar uint vertex_indices\nend_header\n",
        mesh.vertices.len(),
        mesh.faces.len()
    )?;
    for (v, n) in mesh.vertices.iter().zip(&mesh.normals) {
        for c in [v.x, v.y, v.z, n.x, n.y, n.z] {
            out.write_all(&c.to_le_bytes())?;
        }
    }
    for q in &mesh.faces {
        out.write_all(&[4u8])?;
        for &i in q {
            let i = u32::try_from(i).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
            out.write_all(&i.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn write_csv<W: Write>(mesh: &SurfaceMesh, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "z", "nx", "ny", "nz", "t", "theta"])?;
    for ((v, n), p) in mesh.vertices.iter().zip(&mesh.normals).zip(&mesh.param_coords) {
        w.write_record([v.x, v.y, v.z, n.x, n.y, n.z, p[0], p[1]].map(|c| format!("{c:.14e}")))?;
    }
    w.flush().map_err(|e| Error::Serialize(e.to_string()))?;
    Ok(())
}
