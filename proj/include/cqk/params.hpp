#pragma once

#include "cqk/laurent.hpp"

namespace cqk {

enum class Mode { Exact, Float };

/// Evaluation parameters shared by all numeric pipelines.
struct QParams {
    Mode mode = Mode::Exact;
    Rational q_exact = Rational(2);  // used in exact mode, must be > 1
    double q_float = 2.0;            // used in float mode, must be > 1
    int trunc = 32;                  // corner size K of the l^2(N) truncation
    double tol = 1e-9;

    double q() const { return mode == Mode::Exact ? q_exact.get_d() : q_float; }

    void validate() const {
        if (mode == Mode::Exact && q_exact <= 1) throw Error("q must be > 1");
        if (mode == Mode::Float && !(q_float > 1.0)) throw Error("q must be > 1");
        if (trunc < 1) throw Error("truncation level must be >= 1");
        if (!(tol > 0)) throw Error("tolerance must be positive");
    }

    static QParams exact(Rational q0, int K = 32) {
        QParams p;
        p.mode = Mode::Exact;
        p.q_exact = std::move(q0);
        p.q_float = p.q_exact.get_d();
        p.trunc = K;
        return p;
    }
    static QParams flt(double q0, int K = 32, double tol = 1e-9) {
        QParams p;
        p.mode = Mode::Float;
        p.q_float = q0;
        p.q_exact = Rational(q0);
        p.trunc = K;
        p.tol = tol;
        return p;
    }
};

}  // namespace cqk
