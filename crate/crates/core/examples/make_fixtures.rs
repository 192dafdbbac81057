//! Writes the shipped fixture graphs: `cargo run --example make_fixtures -- fixtures`
use std::path::PathBuf;

use tcl_core::{fixtures, io};

fn main() -> tcl_core::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).map_err(|source| tcl_core::Error::Io {
        path: dir.clone(),
        source,
    })?;
    for (name, g) in fixtures::shipped() {
        let path = dir.join(name);
        io::write_edge_list(&g, &path)?;
        println!(
            "{} N={} M={} max_degree={}",
            path.display(),
            g.node_count(),
            g.edge_count(),
            g.max_degree()
        );
    }
    Ok(())
}
