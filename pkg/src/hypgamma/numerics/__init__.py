"""Arbitrary-precision numerics: balls, Γ, 2F1, Euler-integral oracle, expression trees."""
from .balls import ComplexBall, parse_ball, parse_complex
from .expr import Cis, Const, Gamma, Lin, Power, Product, Reciprocal, Sum, T, Trig, eval_expr
from .gamma import gamma_c, rgamma_c
from .hyp2f1 import hyp2f1, hyp2f1_derivative
from .quadrature import euler_oracle

__all__ = [
    "ComplexBall", "parse_ball", "parse_complex", "gamma_c", "rgamma_c", "hyp2f1",
    "hyp2f1_derivative", "euler_oracle", "eval_expr", "Lin", "T", "Const", "Gamma", "Power",
    "Trig", "Cis", "Sum", "Product", "Reciprocal",
]
