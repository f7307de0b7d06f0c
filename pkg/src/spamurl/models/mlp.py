"""Feed-forward binary classifier trained with adam.

Architecture: input -> hidden layers (rectifier) -> single sigmoid output.
Loss: mean cross-entropy plus l2_alpha/(2m) * sum of squared connection
weights (biases unpenalized). Weights start from a symmetric scaled-uniform
draw, limit sqrt(6 / (fan_in + fan_out)), biases from zero.

Training runs mini-batch adam (beta_1, beta_2, epsilon from params). When
the epoch loss fails to improve by tol for n_iter_no_change consecutive
epochs, the learning rate is halved (the adaptive schedule); training stops
at max_iter, or once the rate has decayed below 1e-6, or on plateau when
the adaptive schedule is disabled.
"""

from dataclasses import dataclass

import numpy as np

from ..seeding import rng_from
from .base import Classifier, as_matrix, check_binary_labels, clip_proba, sigmoid


@dataclass
class MlpParams:
    hidden_layer_sizes: tuple = (14, 9)
    activation: str = "relu"
    l2_alpha: float = 0.1
    learning_rate_init: float = 1e-3
    adaptive_rate: bool = True
    max_iter: int = 240
    batch_size: int | None = None
    tol: float = 1e-4
    n_iter_no_change: int = 10
    beta_1: float = 0.9
    beta_2: float = 0.999
    epsilon: float = 1e-8


def init_layers(sizes, rng):
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def forward(weights, biases, X):
    """Activations per layer; the last entry is the output probability column."""
    acts = [X]
    last = len(weights) - 1
    for i, (W, b) in enumerate(zip(weights, biases)):
        z = acts[-1] @ W + b
        acts.append(sigmoid(z) if i == last else np.maximum(z, 0.0))
    return acts


def loss_and_grad(weights, biases, X, y, l2_alpha):
    m = X.shape[0]
    acts = forward(weights, biases, X)
    prob = acts[-1][:, 0]
    pc = clip_proba(prob)
    loss = float(-(y * np.log(pc) + (1.0 - y) * np.log(1.0 - pc)).mean())
    loss += l2_alpha / (2.0 * m) * sum(float((W * W).sum()) for W in weights)

    grads_w = [None] * len(weights)
    grads_b = [None] * len(weights)
    delta = ((prob - y) / m)[:, None]
    for i in range(len(weights) - 1, -1, -1):
        grads_w[i] = acts[i].T @ delta + (l2_alpha / m) * weights[i]
        grads_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ weights[i].T) * (acts[i] > 0.0)
    return loss, grads_w, grads_b


def pack(weights, biases):
    return np.concatenate([a.ravel() for a in weights + biases])


def unpack(flat, sizes):
    weights, biases, ofs = [], [], 0
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        weights.append(flat[ofs : ofs + fan_in * fan_out].reshape(fan_in, fan_out))
        ofs += fan_in * fan_out
    for fan_out in sizes[1:]:
        biases.append(flat[ofs : ofs + fan_out])
        ofs += fan_out
    return weights, biases


def loss_and_grad_flat(flat, sizes, X, y, l2_alpha):
    """Flat-vector view of the loss, for gradient checking."""
    weights, biases = unpack(np.asarray(flat, dtype=np.float64), sizes)
    loss, gw, gb = loss_and_grad(weights, biases, as_matrix(X), np.asarray(y, dtype=np.float64), l2_alpha)
    return loss, pack(gw, gb)


class Mlp(Classifier):
    family = "mlp"

    def __init__(self, params=None):
        self.params = params if params is not None else MlpParams()

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        y = check_binary_labels(y).astype(np.float64)
        p = self.params
        n = X.shape[0]
        self.sizes_ = (X.shape[1], *p.hidden_layer_sizes, 1)
        rng = rng_from(seed)
        weights, biases = init_layers(self.sizes_, rng)

        batch = p.batch_size if p.batch_size is not None else min(200, n)
        lr = p.learning_rate_init
        mom_w = [np.zeros_like(W) for W in weights]
        mom_b = [np.zeros_like(b) for b in biases]
        sq_w = [np.zeros_like(W) for W in weights]
        sq_b = [np.zeros_like(b) for b in biases]
        t = 0
        best = np.inf
        stall = 0
        self.loss_curve_ = []

        for _ in range(p.max_iter):
            perm = rng.permutation(n)
            losses = []
            for lo in range(0, n, batch):
                rows = perm[lo : lo + batch]
                loss, gw, gb = loss_and_grad(weights, biases, X[rows], y[rows], p.l2_alpha)
                losses.append(loss)
                t += 1
                c1 = 1.0 - p.beta_1**t
                c2 = 1.0 - p.beta_2**t
                for params_, grads, mom, sq in (
                    (weights, gw, mom_w, sq_w),
                    (biases, gb, mom_b, sq_b),
                ):
                    for j, g in enumerate(grads):
                        mom[j] = p.beta_1 * mom[j] + (1.0 - p.beta_1) * g
                        sq[j] = p.beta_2 * sq[j] + (1.0 - p.beta_2) * (g * g)
                        params_[j] = params_[j] - lr * (mom[j] / c1) / (np.sqrt(sq[j] / c2) + p.epsilon)
            epoch_loss = float(np.mean(losses))
            self.loss_curve_.append(epoch_loss)
            if epoch_loss < best - p.tol:
                stall = 0
            else:
                stall += 1
            best = min(best, epoch_loss)
            if stall >= p.n_iter_no_change:
                stall = 0
                if not p.adaptive_rate:
                    break
                lr /= 2.0
                if lr < 1e-6:
                    break

        self.weights_ = weights
        self.biases_ = biases
        return self

    def predict_score(self, X):
        return forward(self.weights_, self.biases_, as_matrix(X))[-1][:, 0]
