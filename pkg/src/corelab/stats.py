"""Logistic regression of answer correctness on code-switching metrics.

Grouping factors (model, language, task, ...) enter as fixed-effect dummy
columns, so estimates are a fixed-effects approximation of a mixed model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .diagnostics import emit
from .errors import EncodingError, InputError

__all__ = [
    "z_standardize",
    "DesignEncoder",
    "DesignMatrix",
    "encode",
    "FitResult",
    "fit_logistic",
    "LogisticIRLS",
    "log_likelihood",
    "gradient",
    "gradient_check",
    "INTERCEPT",
    "SEPARATION_BOUND",
]

INTERCEPT = "(intercept)"
# On z-scored predictors a slope this large means the fit is chasing separation.
SEPARATION_BOUND = 20.0


def z_standardize(column: Sequence[float]) -> np.ndarray:
    """(x - mean) / population std; a constant column maps to zeros."""
    x = np.asarray(column, dtype=float)
    if x.size == 0:
        raise InputError("cannot standardize an empty column")
    sd = x.std()
    if sd == 0:
        emit("constant-column")
        return np.zeros_like(x)
    return (x - x.mean()) / sd


class DesignEncoder(TransformerMixin, BaseEstimator):
    """Encode observation dicts into a numeric design matrix.

    Column order: intercept, continuous predictors in the order given (each
    z-scored with the fitted mean and population std), then one dummy per
    non-reference level, factors sorted by name and levels sorted within each.

    Parameters
    ----------
    continuous : sequence of str
        Keys of numeric predictors.
    factors : sequence of str
        Keys of categorical predictors.
    references : mapping, default=None
        Reference level per factor; the lexicographically first level when
        not given.
    drop_constant : bool, default=True
        Drop columns that are constant in the fitting data (the intercept is
        always kept).
    """

    def __init__(self, continuous=(), factors=(), references=None, drop_constant=True):
        self.continuous = continuous
        self.factors = factors
        self.references = references
        self.drop_constant = drop_constant

    def fit(self, X, y=None):
        rows = list(X)
        if not rows:
            raise InputError("cannot encode zero observations")
        self.means_, self.scales_ = {}, {}
        for name in self.continuous:
            col = np.array([float(r[name]) for r in rows])
            self.means_[name] = col.mean()
            self.scales_[name] = col.std()
        self.levels_ = {}
        refs = dict(self.references or {})
        for name in sorted(self.factors):
            levels = sorted({str(r[name]) for r in rows})
            ref = refs.get(name, levels[0])
            if ref not in levels:
                emit("reference-level-absent", factor=name, level=ref)
                ref = levels[0]
            self.levels_[name] = (ref, [lv for lv in levels if lv != ref])
        self.columns_ = self._all_columns()
        self.keep_ = list(range(len(self.columns_)))
        if self.drop_constant:
            full = self._encode(rows)
            keep = []
            for j, name in enumerate(self.columns_):
                if name == INTERCEPT or np.ptp(full[:, j]) > 0:
                    keep.append(j)
                else:
                    emit("constant-column-dropped", column=name)
            self.keep_ = keep
        self.feature_names_out_ = [self.columns_[j] for j in self.keep_]
        return self

    def _all_columns(self) -> list[str]:
        cols = [INTERCEPT, *self.continuous]
        for name, (_, others) in self.levels_.items():
            cols.extend(f"{name}={lv}" for lv in others)
        return cols

    def _encode(self, rows) -> np.ndarray:
        out = np.zeros((len(rows), len(self.columns_)))
        out[:, 0] = 1.0
        for i, r in enumerate(rows):
            j = 1
            for name in self.continuous:
                sd = self.scales_[name]
                out[i, j] = (float(r[name]) - self.means_[name]) / sd if sd > 0 else 0.0
                j += 1
            for name, (ref, others) in self.levels_.items():
                level = str(r[name])
                if level != ref and level not in others:
                    raise EncodingError(f"factor {name}: level {level!r} was not seen when fitting")
                for lv in others:
                    out[i, j] = 1.0 if level == lv else 0.0
                    j += 1
        return out

    def transform(self, X):
        check_is_fitted(self, "columns_")
        return self._encode(list(X))[:, self.keep_]

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "columns_")
        return np.asarray(self.feature_names_out_, dtype=object)


@dataclass
class DesignMatrix:
    X: np.ndarray
    y: np.ndarray
    columns: list[str]
    encoder: DesignEncoder | None = None

    @property
    def penalty_mask(self) -> np.ndarray:
        return np.array([c != INTERCEPT for c in self.columns], dtype=float)


def encode(
    observations: Sequence[Mapping],
    factors: Sequence[str] = (),
    continuous: Sequence[str] = (),
    outcome: str = "correct",
    references: Mapping[str, str] | None = None,
) -> DesignMatrix:
    enc = DesignEncoder(continuous=tuple(continuous), factors=tuple(factors), references=references)
    X = enc.fit_transform(observations)
    y = np.array([1.0 if r[outcome] else 0.0 for r in observations])
    return DesignMatrix(X, y, list(enc.feature_names_out_), enc)


def log_likelihood(X: np.ndarray, y: np.ndarray, beta: np.ndarray, ridge: float = 0.0, mask=None) -> float:
    """Bernoulli log-likelihood with logit link, minus (ridge / 2) * |masked beta|^2."""
    eta = X @ beta
    ll = float(np.sum(y * eta - np.logaddexp(0.0, eta)))
    if ridge:
        m = np.ones_like(beta) if mask is None else mask
        ll -= 0.5 * ridge * float(np.sum(m * beta * beta))
    return ll


def gradient(X: np.ndarray, y: np.ndarray, beta: np.ndarray, ridge: float = 0.0, mask=None) -> np.ndarray:
    p = _sigmoid(X @ beta)
    g = X.T @ (y - p)
    if ridge:
        m = np.ones_like(beta) if mask is None else mask
        g = g - ridge * m * beta
    return g


def _sigmoid(eta: np.ndarray) -> np.ndarray:
    return np.exp(-np.logaddexp(0.0, -eta))


@dataclass
class FitResult:
    coefficients: dict[str, float]
    standard_errors: dict[str, float]
    log_likelihood: float
    converged: bool
    iterations: int
    objective_path: list[float] = field(default_factory=list)
    gradient_max: float = float("nan")
    separation: bool = False
    n_obs: int = 0
    label: str = "fixed-effects approximation"

    @property
    def z_values(self) -> dict[str, float]:
        return {
            k: (v / self.standard_errors[k] if self.standard_errors[k] > 0 else float("nan"))
            for k, v in self.coefficients.items()
        }

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n_obs": self.n_obs,
            "converged": self.converged,
            "separation": self.separation,
            "iterations": self.iterations,
            "log_likelihood": self.log_likelihood,
            "gradient_max": self.gradient_max,
            "coefficients": self.coefficients,
            "standard_errors": self.standard_errors,
            "z_values": self.z_values,
        }


def _irls(X, y, mask, ridge, max_iter, tol):
    n, k = X.shape
    beta = np.zeros(k)
    obj = log_likelihood(X, y, beta, ridge, mask)
    path = [obj]
    converged = separation = False
    it = 0
    while True:
        g = gradient(X, y, beta, ridge, mask)
        if np.max(np.abs(g)) <= tol:
            converged = True
            break
        if it >= max_iter:
            break
        p = _sigmoid(X @ beta)
        w = p * (1.0 - p)
        H = X.T @ (X * w[:, None]) + ridge * np.diag(mask)
        try:
            step = np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(H, g, rcond=None)[0]
        t = 1.0
        while True:
            cand = beta + t * step
            cand_obj = log_likelihood(X, y, cand, ridge, mask)
            if cand_obj >= obj:
                break
            t *= 0.5
            if t < 2.0**-30:
                cand = None
                break
        it += 1
        if cand is None:
            # No ascent along the Newton direction: we are at the numerical optimum.
            converged = bool(np.max(np.abs(g)) <= tol)
            break
        beta, obj = cand, cand_obj
        path.append(obj)
        if np.max(np.abs(beta * mask)) > SEPARATION_BOUND:
            separation = True
            break
    g = gradient(X, y, beta, ridge, mask)
    p = _sigmoid(X @ beta)
    if not separation and np.all(np.abs(p - y) < 1e-6):
        separation = True
    if separation:
        converged = False
        emit("separation", max_abs_coefficient=float(np.max(np.abs(beta))))
    w = p * (1.0 - p)
    H = X.T @ (X * w[:, None]) + ridge * np.diag(mask)
    try:
        cov = np.linalg.inv(H)
        se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    except np.linalg.LinAlgError:
        se = np.full(k, np.nan)
    return beta, se, path, converged, it, float(np.max(np.abs(g))), separation


def _check_outcomes(y: np.ndarray) -> None:
    if y.size == 0 or y.min() == y.max():
        raise InputError("logistic regression needs at least one observation of each outcome")
    if not np.all((y == 0) | (y == 1)):
        raise InputError("outcomes must be 0/1")


def fit_logistic(design: DesignMatrix, ridge: float = 1e-6, max_iter: int = 100, tol: float = 1e-8) -> FitResult:
    """Ridge-penalized maximum likelihood by Newton/IRLS with step halving.

    The intercept is not penalized. Standard errors come from the inverse of
    the penalized observed information at the returned coefficients.
    """
    X = np.asarray(design.X, dtype=float)
    y = np.asarray(design.y, dtype=float)
    _check_outcomes(y)
    mask = design.penalty_mask
    beta, se, path, converged, it, gmax, sep = _irls(X, y, mask, ridge, max_iter, tol)
    return FitResult(
        coefficients={c: float(b) for c, b in zip(design.columns, beta)},
        standard_errors={c: float(s) for c, s in zip(design.columns, se)},
        log_likelihood=log_likelihood(X, y, beta),
        converged=converged,
        iterations=it,
        objective_path=path,
        gradient_max=gmax,
        separation=sep,
        n_obs=len(y),
    )


def gradient_check(
    design: DesignMatrix,
    beta: Sequence[float],
    ridge: float = 1e-6,
    step: float = 1e-5,
    grad: Callable[[np.ndarray, np.ndarray, np.ndarray, float, np.ndarray], np.ndarray] | None = None,
) -> float:
    """Largest |analytic - central difference| / max(1, |central difference|) over coordinates."""
    X, y, mask = design.X, design.y, design.penalty_mask
    beta = np.asarray(beta, dtype=float)
    analytic = (grad or gradient)(X, y, beta, ridge, mask)
    worst = 0.0
    for j in range(beta.size):
        e = np.zeros_like(beta)
        e[j] = step
        fd = (log_likelihood(X, y, beta + e, ridge, mask) - log_likelihood(X, y, beta - e, ridge, mask)) / (2 * step)
        worst = max(worst, abs(analytic[j] - fd) / max(1.0, abs(fd)))
    return worst


class LogisticIRLS(ClassifierMixin, BaseEstimator):
    """Binary logistic regression fitted by IRLS with a small ridge penalty.

    Parameters
    ----------
    ridge : float, default=1e-6
        L2 penalty on all coefficients except the intercept.
    max_iter : int, default=100
    tol : float, default=1e-8
        Convergence threshold on the max-norm of the penalized gradient.
    fit_intercept : bool, default=True

    Attributes
    ----------
    coef_ : ndarray of shape (1, n_features)
    intercept_ : ndarray of shape (1,)
    standard_errors_ : ndarray of shape (n_features + fit_intercept,)
        Intercept first when fitted.
    converged_ : bool
    n_iter_ : int
    objective_path_ : list of float
        Penalized log-likelihood after each accepted step.
    """

    def __init__(self, ridge=1e-6, max_iter=100, tol=1e-8, fit_intercept=True):
        self.ridge = ridge
        self.max_iter = max_iter
        self.tol = tol
        self.fit_intercept = fit_intercept

    def _augment(self, X):
        return np.hstack([np.ones((X.shape[0], 1)), X]) if self.fit_intercept else X

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_, yi = np.unique(y, return_inverse=True)
        if self.classes_.size != 2:
            raise InputError("logistic regression needs at least one observation of each outcome")
        Xa = self._augment(X)
        mask = np.ones(Xa.shape[1])
        if self.fit_intercept:
            mask[0] = 0.0
        beta, se, path, conv, it, gmax, sep = _irls(Xa, yi.astype(float), mask, self.ridge, self.max_iter, self.tol)
        if self.fit_intercept:
            self.intercept_ = beta[:1]
            self.coef_ = beta[1:][None, :]
        else:
            self.intercept_ = np.zeros(1)
            self.coef_ = beta[None, :]
        self.standard_errors_ = se
        self.converged_ = conv
        self.n_iter_ = it
        self.objective_path_ = path
        self.separation_ = sep
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        return X @ self.coef_[0] + self.intercept_[0]

    def predict_proba(self, X):
        p = _sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p, p])

    def predict(self, X):
        return self.classes_[(self.decision_function(X) > 0).astype(int)]
