// Synthetic potentials for the oracle suites: smooth random finite-reflection
// slabs per symmetry class, bump perturbations of constructed fields, and a
// steep box barrier.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bdgsol/direct_scattering.hpp"
#include "bdgsol/soliton_construct.hpp"
#include "support.hpp"

namespace bdgsol::testing {

// m Delta_- plus a few Gaussian bumps of the class-appropriate structure;
// both asymptotes equal m Delta_-.
inline PotentialSlab random_smooth_slab(int d, Symmetry symmetry, std::mt19937_64& rng,
                                        double amplitude = 0.25) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    PotentialSlab slab;
    slab.m = 1.0;
    slab.symmetry = symmetry;
    switch (symmetry) {
        case Symmetry::NonSymmetric: slab.delta_minus = random_unitary(d, rng); break;
        case Symmetry::Symmetric: slab.delta_minus = random_symmetric_unitary(d, rng); break;
        case Symmetry::Antisymmetric:
            slab.delta_minus = random_antisymmetric_unitary(d, rng);
            break;
    }
    slab.delta_plus = slab.delta_minus;
    slab.x_left = -14.0;
    slab.x_right = 14.0;

    struct Bump {
        Mat shape;
        double center, width;
    };
    std::vector<Bump> bumps;
    for (int b = 0; b < 3; ++b) {
        Mat shape = amplitude * random_matrix(d, d, rng) / std::sqrt(2.0 * d);
        if (symmetry == Symmetry::Symmetric) shape = 0.5 * (shape + shape.transpose()).eval();
        if (symmetry == Symmetry::Antisymmetric)
            shape = 0.5 * (shape - shape.transpose()).eval();
        bumps.push_back({shape, 3.0 * unif(rng), 1.0 + 0.5 * std::abs(unif(rng))});
    }
    const Mat base = slab.m * slab.delta_minus;
    slab.sample = [base, bumps](double x) {
        Mat delta = base;
        for (const Bump& b : bumps)
            delta += std::exp(-(x - b.center) * (x - b.center) / (b.width * b.width)) * b.shape;
        return delta;
    };
    return slab;
}

// Constructed field plus a small Gaussian bump: a control that the oracle
// flags non-reflectionless potentials.
inline PotentialSlab bump_perturbed_slab(const ValidatedSpec& spec, double relative_amplitude) {
    PotentialSlab slab = make_slab(spec);
    const double amp = relative_amplitude * spec.m();
    auto clean = slab.sample;
    slab.sample = [clean, amp](double x) {
        Mat delta = clean(x);
        delta(0, 0) += amp * std::exp(-x * x);
        return delta;
    };
    return slab;
}

// One-component barrier m (1 + height on [0, len]) with steep tanh edges.
inline PotentialSlab box_slab(double height, double len, double edge = 0.05) {
    PotentialSlab slab;
    slab.m = 1.0;
    slab.delta_minus = Mat::Identity(1, 1);
    slab.delta_plus = Mat::Identity(1, 1);
    slab.x_left = -12.0;
    slab.x_right = len + 12.0;
    slab.sample = [height, len, edge](double x) {
        Mat delta(1, 1);
        const double box =
            0.5 * (std::tanh(x / edge) - std::tanh((x - len) / edge));
        delta(0, 0) = 1.0 + height * box;
        return delta;
    };
    return slab;
}

}  // namespace bdgsol::testing
