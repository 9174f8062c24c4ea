fn main() {
    let ts = gapforge_core::tiling::reference::build_default_tileset();
    std::fs::write("crates/gapforge-core/data/robinson_tiles.json", ts.to_json()).unwrap();
    println!("wrote {} tiles", ts.tiles.len());
}
