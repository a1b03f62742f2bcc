use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config = cbindgen::Config::from_file(dir.join("cbindgen.toml")).expect("cbindgen.toml");
    let header = cbindgen::Builder::new().with_crate(&dir).with_config(config).generate().expect("generate C header");
    let path = dir.join("include").join("birange.h");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    // only touch the file when it changes, so dependents do not rebuild
    let mut buf = Vec::new();
    header.write(&mut buf);
    if std::fs::read(&path).ok().as_deref() != Some(buf.as_slice()) {
        std::fs::write(&path, buf).expect("write include/birange.h");
    }
}
