#include "hqkd/mlkem.hpp"

#include <cstring>
#include <stdexcept>

#include "hqkd/sha3.hpp"

namespace hqkd {

namespace {

constexpr int kQ = 3329;
constexpr int kK = 2;   // module rank for the 512-level set
constexpr int kEta1 = 3;
constexpr int kEta2 = 2;
constexpr int kDu = 10;
constexpr int kDv = 4;

using Poly = std::array<std::int16_t, 256>;
using PolyVec = std::array<Poly, kK>;

int bitrev7(int x) {
    int r = 0;
    for (int i = 0; i < 7; ++i)
        if (x & (1 << i)) r |= 1 << (6 - i);
    return r;
}

int pow17(int e) {
    long long r = 1, b = 17;
    while (e) {
        if (e & 1) r = r * b % kQ;
        b = b * b % kQ;
        e >>= 1;
    }
    return int(r);
}

struct ZetaTables {
    std::int16_t ntt[128];
    std::int16_t base[128];
    ZetaTables() {
        for (int i = 0; i < 128; ++i) {
            ntt[i] = std::int16_t(pow17(bitrev7(i)));
            base[i] = std::int16_t(pow17(2 * bitrev7(i) + 1));
        }
    }
};

const ZetaTables& zt() {
    static const ZetaTables t;
    return t;
}

inline std::int16_t mul_mod(std::int32_t a, std::int32_t b) {
    std::int32_t r = a * b % kQ;
    return std::int16_t(r < 0 ? r + kQ : r);
}

inline std::int16_t add_mod(std::int32_t a, std::int32_t b) {
    std::int32_t r = (a + b) % kQ;
    return std::int16_t(r < 0 ? r + kQ : r);
}

void ntt(Poly& f) {
    int i = 1;
    for (int len = 128; len >= 2; len /= 2)
        for (int start = 0; start < 256; start += 2 * len) {
            std::int16_t zeta = zt().ntt[i++];
            for (int j = start; j < start + len; ++j) {
                std::int16_t t = mul_mod(zeta, f[j + len]);
                f[j + len] = add_mod(f[j], -t);
                f[j] = add_mod(f[j], t);
            }
        }
}

void ntt_inv(Poly& f) {
    int i = 127;
    for (int len = 2; len <= 128; len *= 2)
        for (int start = 0; start < 256; start += 2 * len) {
            std::int16_t zeta = zt().ntt[i--];
            for (int j = start; j < start + len; ++j) {
                std::int16_t t = f[j];
                f[j] = add_mod(t, f[j + len]);
                f[j + len] = mul_mod(zeta, add_mod(f[j + len], -t));
            }
        }
    for (auto& c : f) c = mul_mod(c, 3303);  // 128^-1 mod q
}

Poly ntt_mul(const Poly& a, const Poly& b) {
    Poly h;
    for (int i = 0; i < 128; ++i) {
        std::int16_t g = zt().base[i];
        std::int16_t a0 = a[2 * i], a1 = a[2 * i + 1];
        std::int16_t b0 = b[2 * i], b1 = b[2 * i + 1];
        h[2 * i] = add_mod(mul_mod(a0, b0), mul_mod(mul_mod(a1, b1), g));
        h[2 * i + 1] = add_mod(mul_mod(a0, b1), mul_mod(a1, b0));
    }
    return h;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < 256; ++i) r[i] = add_mod(a[i], b[i]);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < 256; ++i) r[i] = add_mod(a[i], -b[i]);
    return r;
}

// Rejection sampling of a uniform NTT-domain polynomial from an XOF stream.
Poly sample_ntt(const std::uint8_t seed[32], std::uint8_t j, std::uint8_t i) {
    Shake128 xof;
    xof.absorb(seed, 32);
    xof.absorb(&j, 1);
    xof.absorb(&i, 1);
    xof.finalize();
    Poly a;
    int n = 0;
    std::uint8_t c[3];
    while (n < 256) {
        xof.squeeze(c, 3);
        int d1 = c[0] + 256 * (c[1] % 16);
        int d2 = c[1] / 16 + 16 * c[2];
        if (d1 < kQ) a[n++] = std::int16_t(d1);
        if (d2 < kQ && n < 256) a[n++] = std::int16_t(d2);
    }
    return a;
}

Poly sample_cbd(int eta, const std::uint8_t seed[32], std::uint8_t nonce) {
    Shake256 prf;
    prf.absorb(seed, 32);
    prf.absorb(&nonce, 1);
    prf.finalize();
    auto buf = prf.squeeze(std::size_t(64 * eta));
    auto bit = [&](std::size_t k) { return (buf[k / 8] >> (k % 8)) & 1; };
    Poly f;
    for (int i = 0; i < 256; ++i) {
        int x = 0, y = 0;
        for (int j = 0; j < eta; ++j) {
            x += bit(std::size_t(2 * i * eta + j));
            y += bit(std::size_t(2 * i * eta + eta + j));
        }
        f[i] = add_mod(x, -y);
    }
    return f;
}

// d-bit little-endian packing of 256 coefficients.
void byte_encode(int d, const Poly& f, std::uint8_t* out) {
    std::memset(out, 0, std::size_t(32 * d));
    std::size_t bitpos = 0;
    for (int i = 0; i < 256; ++i) {
        std::uint32_t v = std::uint32_t(f[i]);
        for (int b = 0; b < d; ++b, ++bitpos)
            out[bitpos / 8] |= std::uint8_t(((v >> b) & 1) << (bitpos % 8));
    }
}

Poly byte_decode(int d, const std::uint8_t* in) {
    Poly f;
    std::size_t bitpos = 0;
    for (int i = 0; i < 256; ++i) {
        std::uint32_t v = 0;
        for (int b = 0; b < d; ++b, ++bitpos)
            v |= std::uint32_t((in[bitpos / 8] >> (bitpos % 8)) & 1) << b;
        // d = 12 decodes into Z_q, not Z_4096; without the reduction the
        // encaps re-encode check would accept coefficients in [q, 4096).
        if (d == 12) v %= std::uint32_t(kQ);
        f[i] = std::int16_t(v);
    }
    return f;
}

inline std::int16_t compress(int d, std::int16_t x) {
    return std::int16_t(((std::uint32_t(x) << d) + (kQ / 2)) / kQ % (1u << d));
}

inline std::int16_t decompress(int d, std::int16_t y) {
    return std::int16_t((std::uint32_t(kQ) * std::uint32_t(y) + (1u << (d - 1))) >> d);
}

struct Matrix {
    Poly a[kK][kK];
};

Matrix expand_matrix(const std::uint8_t rho[32]) {
    Matrix m;
    for (int i = 0; i < kK; ++i)
        for (int j = 0; j < kK; ++j)
            m.a[i][j] = sample_ntt(rho, std::uint8_t(j), std::uint8_t(i));
    return m;
}

struct PkeKeys {
    std::vector<std::uint8_t> ek;  // encode12(t_hat) || rho
    std::vector<std::uint8_t> dk;  // encode12(s_hat)
};

PkeKeys pke_keygen(const std::array<std::uint8_t, 32>& d) {
    std::vector<std::uint8_t> din(d.begin(), d.end());
    din.push_back(std::uint8_t(kK));
    auto g = sha3_512(din);
    std::uint8_t rho[32], sigma[32];
    std::memcpy(rho, g.data(), 32);
    std::memcpy(sigma, g.data() + 32, 32);

    Matrix a = expand_matrix(rho);
    PolyVec s, e;
    std::uint8_t n = 0;
    for (int i = 0; i < kK; ++i) s[std::size_t(i)] = sample_cbd(kEta1, sigma, n++);
    for (int i = 0; i < kK; ++i) e[std::size_t(i)] = sample_cbd(kEta1, sigma, n++);
    for (auto& p : s) ntt(p);
    for (auto& p : e) ntt(p);

    PolyVec t;
    for (int i = 0; i < kK; ++i) {
        t[std::size_t(i)] = e[std::size_t(i)];
        for (int j = 0; j < kK; ++j)
            t[std::size_t(i)] =
                poly_add(t[std::size_t(i)], ntt_mul(a.a[i][j], s[std::size_t(j)]));
    }

    PkeKeys keys;
    keys.ek.resize(384 * kK + 32);
    keys.dk.resize(384 * kK);
    for (int i = 0; i < kK; ++i) {
        byte_encode(12, t[std::size_t(i)], keys.ek.data() + 384 * i);
        byte_encode(12, s[std::size_t(i)], keys.dk.data() + 384 * i);
    }
    std::memcpy(keys.ek.data() + 384 * kK, rho, 32);
    return keys;
}

std::vector<std::uint8_t> pke_encrypt(const std::vector<std::uint8_t>& ek,
                                      const std::uint8_t m[32], const std::uint8_t r[32]) {
    PolyVec t;
    for (int i = 0; i < kK; ++i) t[std::size_t(i)] = byte_decode(12, ek.data() + 384 * i);
    std::uint8_t rho[32];
    std::memcpy(rho, ek.data() + 384 * kK, 32);
    Matrix a = expand_matrix(rho);

    PolyVec y, e1;
    std::uint8_t n = 0;
    for (int i = 0; i < kK; ++i) y[std::size_t(i)] = sample_cbd(kEta1, r, n++);
    for (int i = 0; i < kK; ++i) e1[std::size_t(i)] = sample_cbd(kEta2, r, n++);
    Poly e2 = sample_cbd(kEta2, r, n);
    for (auto& p : y) ntt(p);

    PolyVec u;
    for (int i = 0; i < kK; ++i) {
        Poly acc{};
        for (int j = 0; j < kK; ++j)
            acc = poly_add(acc, ntt_mul(a.a[j][i], y[std::size_t(j)]));  // A^T
        ntt_inv(acc);
        u[std::size_t(i)] = poly_add(acc, e1[std::size_t(i)]);
    }

    Poly mu;
    for (int i = 0; i < 256; ++i)
        mu[i] = decompress(1, std::int16_t((m[i / 8] >> (i % 8)) & 1));
    Poly v{};
    for (int i = 0; i < kK; ++i)
        v = poly_add(v, ntt_mul(t[std::size_t(i)], y[std::size_t(i)]));
    ntt_inv(v);
    v = poly_add(poly_add(v, e2), mu);

    std::vector<std::uint8_t> ct(32 * (kDu * kK + kDv));
    for (int i = 0; i < kK; ++i) {
        Poly c = u[std::size_t(i)];
        for (auto& x : c) x = compress(kDu, x);
        byte_encode(kDu, c, ct.data() + 32 * kDu * i);
    }
    Poly cv = v;
    for (auto& x : cv) x = compress(kDv, x);
    byte_encode(kDv, cv, ct.data() + 32 * kDu * kK);
    return ct;
}

void pke_decrypt(const std::uint8_t* dk, const std::vector<std::uint8_t>& ct,
                 std::uint8_t m[32]) {
    PolyVec u;
    for (int i = 0; i < kK; ++i) {
        u[std::size_t(i)] = byte_decode(kDu, ct.data() + 32 * kDu * i);
        for (auto& x : u[std::size_t(i)]) x = decompress(kDu, x);
    }
    Poly v = byte_decode(kDv, ct.data() + 32 * kDu * kK);
    for (auto& x : v) x = decompress(kDv, x);

    Poly w{};
    for (int i = 0; i < kK; ++i) {
        Poly s = byte_decode(12, dk + 384 * i);
        Poly up = u[std::size_t(i)];
        ntt(up);
        w = poly_add(w, ntt_mul(s, up));
    }
    ntt_inv(w);
    w = poly_sub(v, w);

    std::memset(m, 0, 32);
    for (int i = 0; i < 256; ++i)
        m[i / 8] |= std::uint8_t(std::uint8_t(compress(1, w[i])) << (i % 8));
}

} // namespace

MlKemKeyPair mlkem512_keygen(const std::array<std::uint8_t, 32>& d,
                             const std::array<std::uint8_t, 32>& z) {
    auto pke = pke_keygen(d);
    MlKemKeyPair kp;
    kp.ek = pke.ek;
    kp.dk = pke.dk;
    kp.dk.insert(kp.dk.end(), pke.ek.begin(), pke.ek.end());
    auto h = sha3_256(pke.ek);
    kp.dk.insert(kp.dk.end(), h.begin(), h.end());
    kp.dk.insert(kp.dk.end(), z.begin(), z.end());
    return kp;
}

MlKemEncapsResult mlkem512_encaps(const std::vector<std::uint8_t>& ek,
                                  const std::array<std::uint8_t, 32>& m) {
    if (ek.size() != kMlKemEkBytes)
        throw std::invalid_argument("mlkem512_encaps: bad ek length");
    // Modulus check: ek must be a canonical encoding (every coefficient < q).
    for (int i = 0; i < kK; ++i) {
        Poly t = byte_decode(12, ek.data() + 384 * i);
        std::uint8_t re[384];
        byte_encode(12, t, re);
        if (std::memcmp(re, ek.data() + 384 * i, 384) != 0)
            throw std::invalid_argument("mlkem512_encaps: ek fails modulus check");
    }

    auto hek = sha3_256(ek);
    std::vector<std::uint8_t> gin(m.begin(), m.end());
    gin.insert(gin.end(), hek.begin(), hek.end());
    auto g = sha3_512(gin);

    MlKemEncapsResult res;
    std::memcpy(res.shared_secret.data(), g.data(), 32);
    res.ct = pke_encrypt(ek, m.data(), g.data() + 32);
    return res;
}

std::array<std::uint8_t, 32> mlkem512_decaps(const std::vector<std::uint8_t>& dk,
                                             const std::vector<std::uint8_t>& ct) {
    if (dk.size() != kMlKemDkBytes)
        throw std::invalid_argument("mlkem512_decaps: bad dk length");
    if (ct.size() != kMlKemCtBytes)
        throw std::invalid_argument("mlkem512_decaps: bad ct length");

    const std::uint8_t* dk_pke = dk.data();
    std::vector<std::uint8_t> ek_pke(dk.begin() + 384 * kK, dk.begin() + 768 * kK + 32);
    const std::uint8_t* h = dk.data() + 768 * kK + 32;
    const std::uint8_t* z = dk.data() + 768 * kK + 64;

    std::uint8_t m[32];
    pke_decrypt(dk_pke, ct, m);

    std::vector<std::uint8_t> gin(m, m + 32);
    gin.insert(gin.end(), h, h + 32);
    auto g = sha3_512(gin);

    Shake256 j;
    j.absorb(z, 32);
    j.absorb(ct);
    j.finalize();
    std::array<std::uint8_t, 32> k_bar;
    j.squeeze(k_bar.data(), 32);

    auto ct2 = pke_encrypt(ek_pke, m, g.data() + 32);
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < ct.size(); ++i) diff |= std::uint8_t(ct[i] ^ ct2[i]);

    std::array<std::uint8_t, 32> out;
    if (diff == 0)
        std::memcpy(out.data(), g.data(), 32);
    else
        out = k_bar;
    return out;
}

} // namespace hqkd
