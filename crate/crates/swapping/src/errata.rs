//! Places where a reference closed form had to be corrected or pinned down
//! before it agreed with the oracle. Each entry names the suite whose
//! passing run confirms the implemented form.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub id: &'static str,
    pub reference_form: &'static str,
    pub implemented_form: &'static str,
    /// Built-in suite exercising the implemented form.
    pub witness: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        id: "max-entangled-pair",
        reference_form: "|φ(u₁, u₂)⟩ = d^{-1/2} Σ_l ζ^{l u₁} |l, l⊕u₁⟩",
        implemented_form: "|φ(u₁, u₂)⟩ = d^{-1/2} Σ_l ζ^{l u₁} |l, l⊕u₂⟩",
        witness: "karimipour",
    },
    Erratum {
        id: "karimipour-remainder",
        reference_form: "|φ(u₁¹⊕l₂, u₁¹, u₂¹, …, u₂²⊕l₁, …, u_m¹)⟩",
        implemented_form: "|φ(u₁¹⊕l₂, u₂¹, …, u₂²⊕l₁, …, u_m¹)⟩: m entries, the pair's second particle at slot k",
        witness: "karimipour",
    },
    Erratum {
        id: "karimipour-measured-order",
        reference_form: "measured pair |φ(v₁, v₂)⟩ ordered (pair particle 1, cat particle k)",
        implemented_form: "same state relabeled for ascending positions (k, m+1): φ(v₁, ⊖v₂) up to phase ζ^{−v₁v₂}",
        witness: "karimipour",
    },
    Erratum {
        id: "karimipour-first-particle",
        reference_form: "slot-k shift u₂²⊕u_k¹⊖v₂ and coefficient exponent (u_k¹⊖v₂)(u₁²⊖v₁) for every k",
        implemented_form: "u_k¹ read as the shift s_k of cat particle k, with s₁ = 0; for k = 1 the remainder carries a nonzero first shift",
        witness: "karimipour",
    },
    Erratum {
        id: "cat-swap-sign-exponent",
        reference_form: "(−1)^{Σ_{r≥2} ā_r¹ λ_r}",
        implemented_form: "(−1)^{Σ_r s_r λ_r}, s_r = 1 iff cat r is complemented in the branch (s₁ = 0)",
        witness: "cat-swap",
    },
    Erratum {
        id: "masked-qudit-ket",
        reference_form: "|a₁, a₁⊕v₂, a₁⊕u₃, …, a₁⊕vₙ⟩",
        implemented_form: "|a₁, a₁⊕v₂, a₁⊕v₃, …, a₁⊕vₙ⟩",
        witness: "masked-qudit",
    },
    Erratum {
        id: "masked-qudit-phase",
        reference_form: "Σ over v with e^{i Σ_r ϑ_{a_r}} and free a_r",
        implemented_form: "Σ over a₁ with a_r = a₁⊕v_r and phase e^{i Σ_r ϑ^r_{a_r}}; normalization computed per outcome",
        witness: "masked-qudit",
    },
    Erratum {
        id: "li-amplitude-index",
        reference_form: "α^r_{k_r} ζ^{ω^r k^r}",
        implemented_form: "Σ_k α^r_k ζ^{ω^r k} with a single index k per input; a₀^r = a₀¹⊕v_r",
        witness: "li-masked",
    },
];

pub fn find(id: &str) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.id == id)
}
