use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let config = cbindgen::Config::from_file(dir.join("cbindgen.toml")).expect("cbindgen.toml");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let bindings = match cbindgen::generate_with_config(&dir, config) {
        Ok(b) => b,
        Err(e) => {
            println!("cargo:warning=header not regenerated: {e}");
            return;
        }
    };
    let mut buf = Vec::new();
    bindings.write(&mut buf);
    let out = dir.join("include").join("sfi.h");
    if fs::read(&out).ok().as_deref() != Some(buf.as_slice()) {
        fs::create_dir_all(out.parent().unwrap()).unwrap();
        fs::write(&out, buf).unwrap();
    }
}
