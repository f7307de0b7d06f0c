"""Trained-model persistence.

A model file is line-oriented UTF-8 text: a magic first line, version and
feature-schema headers, then `key = value` pairs whose values carry a type
tag. Floats are written as hexadecimal float literals, so a save -> load ->
save round trip is byte-identical and files diff cleanly.

    SPAMURL-MODEL
    version = 1
    features = url_length,...,has_ip
    family = s:bagging
    params.n_estimators = i:140
    state.tree0.threshold = fa:0x1.8p+4 0x1p-1

Value tags: none, b (bool), i (int), f (hex float), s (string),
ia (ints), fa (hex floats). Loading rejects unknown versions and feature
schemas that do not match the current canonical 13 columns.
"""

import dataclasses

import numpy as np

from .errors import ModelFormatError
from .models.base import Standardizer
from .models.registry import FittedModel, ModelSpec, build_model, lookup_family
from .models.tree import Tree
from .url_features import FEATURE_NAMES

MAGIC = "SPAMURL-MODEL"
VERSION = 1


def encode_value(v):
    if v is None:
        return "none"
    if isinstance(v, (bool, np.bool_)):
        return f"b:{int(v)}"
    if isinstance(v, (int, np.integer)):
        return f"i:{int(v)}"
    if isinstance(v, (float, np.floating)):
        return f"f:{float(v).hex()}"
    if isinstance(v, str):
        if "\n" in v:
            raise ModelFormatError("string values cannot contain newlines")
        return f"s:{v}"
    if isinstance(v, (tuple, list, np.ndarray)):
        arr = np.asarray(v)
        if arr.size == 0 or arr.dtype.kind in "iu":
            return "ia:" + " ".join(str(int(x)) for x in arr.ravel())
        return "fa:" + " ".join(float(x).hex() for x in arr.ravel())
    raise ModelFormatError(f"cannot encode value of type {type(v).__name__}")


def decode_value(text):
    if text == "none":
        return None
    tag, _, body = text.partition(":")
    if tag == "b":
        return body == "1"
    if tag == "i":
        return int(body)
    if tag == "f":
        return float.fromhex(body)
    if tag == "s":
        return body
    if tag == "ia":
        return np.array([int(x) for x in body.split()], dtype=np.int64)
    if tag == "fa":
        return np.array([float.fromhex(x) for x in body.split()], dtype=np.float64)
    raise ModelFormatError(f"unknown value tag {tag!r}")


def _is_spec_tuple(value):
    return (
        isinstance(value, tuple)
        and len(value) > 0
        and all(isinstance(e, (str, ModelSpec)) for e in value)
    )


def _params_items(params, prefix):
    items = []
    for field in dataclasses.fields(params):
        value = getattr(params, field.name)
        key = prefix + field.name
        if dataclasses.is_dataclass(value) and not isinstance(value, type):
            items.extend(_params_items(value, key + "."))
        elif _is_spec_tuple(value):
            items.append((key + ".count", len(value)))
            for i, entry in enumerate(value):
                spec = ModelSpec(entry) if isinstance(entry, str) else entry
                items.append((f"{key}.{i}.family", spec.family))
                items.extend(_params_items(spec.resolved_params(), f"{key}.{i}.params."))
        else:
            items.append((key, value))
    return items


def _params_from(family, flat, prefix):
    fam = lookup_family(family)
    return _dataclass_from(fam.params_cls, fam.default_params(), flat, prefix)


def _dataclass_from(cls, defaults, flat, prefix):
    kwargs = {}
    for field in dataclasses.fields(cls):
        key = prefix + field.name
        if key in flat:
            value = flat[key]
            if isinstance(value, np.ndarray):
                value = tuple(int(x) for x in value)
            kwargs[field.name] = value
        elif key + ".count" in flat:
            entries = []
            for i in range(flat[key + ".count"]):
                sub_family = flat[f"{key}.{i}.family"]
                entries.append(ModelSpec(sub_family, _params_from(sub_family, flat, f"{key}.{i}.params.")))
            kwargs[field.name] = tuple(entries)
        else:
            nested_default = getattr(defaults, field.name)
            if dataclasses.is_dataclass(nested_default) and not isinstance(nested_default, type):
                kwargs[field.name] = _dataclass_from(type(nested_default), nested_default, flat, key + ".")
            else:
                kwargs[field.name] = nested_default
    return cls(**kwargs)


def _tree_items(prefix, tree):
    return [
        (prefix + "feature", tree.feature),
        (prefix + "threshold", tree.threshold),
        (prefix + "left", tree.left),
        (prefix + "right", tree.right),
        (prefix + "value", tree.value),
    ]


def _tree_from(flat, prefix):
    return Tree(
        flat[prefix + "feature"].astype(np.int32),
        flat[prefix + "threshold"],
        flat[prefix + "left"].astype(np.int32),
        flat[prefix + "right"].astype(np.int32),
        flat[prefix + "value"],
    )


def _state_items(model, prefix):
    fam = model.family
    if fam == "logreg":
        return [(prefix + "coef", model.coef_), (prefix + "intercept", model.intercept_)]
    if fam == "knn":
        return [
            (prefix + "n_features", model.train_X_.shape[1]),
            (prefix + "train_x", model.train_X_.ravel()),
            (prefix + "train_y", model.train_y_),
        ]
    if fam == "dtree":
        return _tree_items(prefix + "tree.", model.tree_)
    if fam in ("bnb", "mnb"):
        items = [
            (prefix + "n_features", model.feature_log_prob_.shape[1]),
            (prefix + "log_prior", model.log_prior_),
            (prefix + "feature_log_prob", model.feature_log_prob_.ravel()),
        ]
        if fam == "bnb":
            items.append((prefix + "feature_log_neg_prob", model.feature_log_neg_prob_.ravel()))
        return items
    if fam == "mlp":
        items = [(prefix + "sizes", model.sizes_)]
        for i, w in enumerate(model.weights_):
            items.append((prefix + f"w{i}", w.ravel()))
        for i, b in enumerate(model.biases_):
            items.append((prefix + f"b{i}", b))
        return items
    if fam in ("bagging", "forest"):
        items = [(prefix + "n_trees", len(model.trees_))]
        for i, tree in enumerate(model.trees_):
            items.extend(_tree_items(prefix + f"tree{i}.", tree))
        return items
    if fam == "adaboost":
        items = [(prefix + "n_stumps", len(model.stumps_))]
        for i, stump in enumerate(model.stumps_):
            items.extend(_tree_items(prefix + f"stump{i}.", stump))
        return items
    if fam == "gboost":
        items = [(prefix + "f0", model.f0_), (prefix + "n_trees", len(model.trees_))]
        for i, tree in enumerate(model.trees_):
            items.extend(_tree_items(prefix + f"tree{i}.", tree))
        return items
    if fam == "stacking":
        items = [(prefix + "n_base", len(model.base_pipelines_))]
        for i, pipe in enumerate(model.base_pipelines_):
            items.extend(_fitted_items(pipe, prefix + f"base{i}."))
        items.append((prefix + "meta.coef", model.meta_.coef_))
        items.append((prefix + "meta.intercept", model.meta_.intercept_))
        return items
    raise ModelFormatError(f"no serializer for family {fam!r}")


def _model_from_state(family, params, flat, prefix):
    model = build_model(ModelSpec(family, params))
    if family == "logreg":
        model.coef_ = flat[prefix + "coef"]
        model.intercept_ = float(flat[prefix + "intercept"])
    elif family == "knn":
        d = flat[prefix + "n_features"]
        model.train_X_ = flat[prefix + "train_x"].reshape(-1, d)
        model.train_y_ = flat[prefix + "train_y"]
    elif family == "dtree":
        model.tree_ = _tree_from(flat, prefix + "tree.")
    elif family in ("bnb", "mnb"):
        d = flat[prefix + "n_features"]
        model.log_prior_ = flat[prefix + "log_prior"]
        model.feature_log_prob_ = flat[prefix + "feature_log_prob"].reshape(2, d)
        if family == "bnb":
            model.feature_log_neg_prob_ = flat[prefix + "feature_log_neg_prob"].reshape(2, d)
    elif family == "mlp":
        sizes = tuple(int(x) for x in flat[prefix + "sizes"])
        model.sizes_ = sizes
        model.weights_ = [
            flat[prefix + f"w{i}"].reshape(sizes[i], sizes[i + 1])
            for i in range(len(sizes) - 1)
        ]
        model.biases_ = [flat[prefix + f"b{i}"] for i in range(len(sizes) - 1)]
    elif family in ("bagging", "forest"):
        model.trees_ = [
            _tree_from(flat, prefix + f"tree{i}.") for i in range(flat[prefix + "n_trees"])
        ]
    elif family == "adaboost":
        model.stumps_ = [
            _tree_from(flat, prefix + f"stump{i}.") for i in range(flat[prefix + "n_stumps"])
        ]
    elif family == "gboost":
        model.f0_ = float(flat[prefix + "f0"])
        model.trees_ = [
            _tree_from(flat, prefix + f"tree{i}.") for i in range(flat[prefix + "n_trees"])
        ]
    elif family == "stacking":
        model.base_pipelines_ = [
            _fitted_from(flat, prefix + f"base{i}.") for i in range(flat[prefix + "n_base"])
        ]
        meta = build_model(ModelSpec("logreg"))
        meta.coef_ = flat[prefix + "meta.coef"]
        meta.intercept_ = float(flat[prefix + "meta.intercept"])
        model.meta_ = meta
    else:
        raise ModelFormatError(f"no loader for family {family!r}")
    return model


def _fitted_items(fitted, prefix):
    items = [(prefix + "family", fitted.spec.family)]
    items.extend(_params_items(fitted.spec.resolved_params(), prefix + "params."))
    if fitted.standardizer is not None:
        items.append((prefix + "std.mean", fitted.standardizer.mean_))
        items.append((prefix + "std.std", fitted.standardizer.std_))
    items.extend(_state_items(fitted.model, prefix + "state."))
    return items


def _fitted_from(flat, prefix):
    family = flat[prefix + "family"]
    params = _params_from(family, flat, prefix + "params.")
    standardizer = None
    if prefix + "std.mean" in flat:
        standardizer = Standardizer()
        standardizer.mean_ = flat[prefix + "std.mean"]
        standardizer.std_ = flat[prefix + "std.std"]
    model = _model_from_state(family, params, flat, prefix + "state.")
    return FittedModel(ModelSpec(family, params), standardizer, model)


def save_model(path, fitted):
    lines = [MAGIC, f"version = {VERSION}", "features = " + ",".join(FEATURE_NAMES)]
    for key, value in _fitted_items(fitted, ""):
        lines.append(f"{key} = {encode_value(value)}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def load_model(path):
    with open(path, encoding="utf-8") as handle:
        first = handle.readline().rstrip("\n")
        if first != MAGIC:
            raise ModelFormatError(f"not a {MAGIC} file")
        flat = {}
        header = {}
        for raw in handle:
            line = raw.rstrip("\n")
            if not line:
                continue
            key, sep, value = line.partition(" = ")
            if not sep:
                raise ModelFormatError(f"malformed line: {line!r}")
            if key in ("version", "features"):
                header[key] = value
            else:
                flat[key] = decode_value(value)
    if header.get("version") != str(VERSION):
        raise ModelFormatError(f"unsupported version {header.get('version')!r}")
    if header.get("features") != ",".join(FEATURE_NAMES):
        raise ModelFormatError("feature schema mismatch")
    return _fitted_from(flat, "")
