// Deterministic ML-KEM-512 KAT generator.
// Emits JSON lines: {d, z, m, ek, dk, ct, ss, ct_bad, ss_bad}
// where (d,z) seed KeyGen, m seeds Encaps, ct_bad is ct with first byte
// flipped, ss_bad the implicit-rejection shared secret for ct_bad.

use ml_kem::kem::Decapsulate;
use ml_kem::{EncapsulateDeterministic, EncodedSizeUser, KemCore, MlKem512, B32};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

fn b32_from(seed: u64, tag: u8) -> B32 {
    // Stretch (seed, tag) into 32 bytes with SHAKE256 so vectors are
    // reproducible from a compact description.
    let mut x = Shake256::default();
    x.update(&seed.to_le_bytes());
    x.update(&[tag]);
    let mut r = x.finalize_xof();
    let mut out = [0u8; 32];
    r.read(&mut out);
    out.into()
}

fn main() {
    for seed in 0u64..10 {
        let d = b32_from(seed, 0);
        let z = b32_from(seed, 1);
        let m = b32_from(seed, 2);
        let (dk, ek) = MlKem512::generate_deterministic(&d, &z);
        let (ct, ss) = ek.encapsulate_deterministic(&m).unwrap();
        let ss2 = dk.decapsulate(&ct).unwrap();
        assert_eq!(ss, ss2, "round-trip mismatch");
        let mut ct_bad = ct.clone();
        ct_bad[0] ^= 1;
        let ss_bad = dk.decapsulate(&ct_bad).unwrap();
        println!(
            "{{\"d\":\"{}\",\"z\":\"{}\",\"m\":\"{}\",\"ek\":\"{}\",\"dk\":\"{}\",\"ct\":\"{}\",\"ss\":\"{}\",\"ct_bad\":\"{}\",\"ss_bad\":\"{}\"}}",
            hex::encode(d),
            hex::encode(z),
            hex::encode(m),
            hex::encode(ek.as_bytes()),
            hex::encode(dk.as_bytes()),
            hex::encode(&ct),
            hex::encode(ss),
            hex::encode(&ct_bad),
            hex::encode(ss_bad)
        );
    }
}
