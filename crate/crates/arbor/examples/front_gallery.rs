//! Writes SVG drawings of every model front and orientation choice.
//! Usage: `cargo run --example front_gallery [out_dir]`.

use arbor::localmodels::{render_front, FrontModel, FrontOptions};

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().join("arbor-fronts").display().to_string());
    std::fs::create_dir_all(&dir)?;
    let opts = FrontOptions::default();
    for name in ["a2", "a2_times_interval", "a3", "ridge1", "ridge2"] {
        let model = FrontModel::parse(name).unwrap();
        for orientation in 0..1u32 << model.orientation_bits() {
            let scene = render_front(model, orientation, &opts).unwrap();
            let path = format!("{dir}/{name}_{orientation}.svg");
            std::fs::write(&path, scene.to_svg(&opts))?;
            println!("{path}: {} pieces, {} arrows", scene.pieces.len(), scene.arrows.len());
        }
    }
    Ok(())
}
