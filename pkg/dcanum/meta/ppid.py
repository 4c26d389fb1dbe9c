"""Pipeline identifiers for model, server and run configurations

A pipeline identifier (ppid) is a compact, human-readable string such
as ``dca:i=284^e=32/21-64/9-...^l=0.006`` that fully determines a frozen
configuration dataclass. Model files store the model ppid so that the
layer plan can be reconstructed without any side channel.
"""
from __future__ import annotations

import dataclasses
import hashlib


#: Increment this string if there are breaking changes that make
#: previous pipelines unreproducible.
DCANUM_PPID_GENERATION = "1"

#: configuration fields holding tuples of (feature_maps, kernel_len)
LAYER_FIELDS = ("encoder", "decoder")


def compute_pipeline_hash(*ppids, gen_id=DCANUM_PPID_GENERATION):
    """MD5 hex digest identifying a combination of pipeline identifiers"""
    hasher = hashlib.md5()
    hasher.update("|".join([gen_id] + list(ppids)).encode())
    return hasher.hexdigest()


def get_unique_prefix(str_list):
    """Find unique prefix for a list of strings

    Every string is shortened to its shortest prefix that is not
    a prefix of any other string in the list. If no such prefix
    exists (the string itself is a prefix of another string), the
    full string is used.
    """
    abrvs = []
    for ii, string in enumerate(str_list):
        others = [ss for jj, ss in enumerate(str_list) if jj != ii]
        for size in range(1, len(string) + 1):
            prefix = string[:size]
            if not any(oo.startswith(prefix) for oo in others):
                abrvs.append(prefix)
                break
        else:
            abrvs.append(string)
    return abrvs


def layers_to_string(layers):
    return "-".join(f"{maps}/{kern}" for maps, kern in layers)


def string_to_layers(value):
    layers = []
    for item in value.split("-"):
        maps, kern = item.split("/")
        layers.append((int(maps), int(kern)))
    return tuple(layers)


def _format_value(name, val):
    if name in LAYER_FIELDS:
        return layers_to_string(val)
    if isinstance(val, bool):
        return str(int(val))  # do not print e.g. "True"
    elif isinstance(val, float) and val == int(val):
        return str(int(val))  # omit the ".0" at the end
    elif isinstance(val, (tuple, list)):
        return "-".join(str(v) for v in val)
    return str(val)


def _parse_value(name, text, default):
    if name in LAYER_FIELDS:
        return string_to_layers(text)
    if isinstance(default, bool):
        return bool(float(text))
    elif isinstance(default, int):
        return int(text)
    elif isinstance(default, float):
        return float(text)
    elif default is None:
        if text == "None":
            return None
        number = float(text)
        return int(number) if number == int(number) else number
    return text


def config_to_ppid(cfg, key):
    """Return the pipeline identifier of a configuration dataclass"""
    fields = [ff.name for ff in dataclasses.fields(cfg)]
    abrvs = get_unique_prefix(fields)
    items = [f"{abr}={_format_value(name, getattr(cfg, name))}"
             for name, abr in zip(fields, abrvs)]
    return f"{key}:" + "^".join(items)


def ppid_to_kwargs(cls, ppid):
    """Convert a pipeline identifier to keyword arguments of `cls`

    Notes
    -----
    New fields of a configuration class must always be appended at
    the very end, otherwise abbreviated keys become ambiguous.
    """
    if ":" not in ppid:
        raise ValueError(f"Pipeline identifier without key: '{ppid}'")
    _, body = ppid.split(":", 1)
    defaults = {}
    for ff in dataclasses.fields(cls):
        if ff.default is not dataclasses.MISSING:
            defaults[ff.name] = ff.default
        else:
            defaults[ff.name] = None
    entries = [it.split("=", 1) for it in body.split("^") if it]
    # longest abbreviations first
    entries = sorted(entries, key=lambda x: -len(x[0]))
    kwargs = {}
    for abr, val in entries:
        for name in defaults:
            if name not in kwargs and name.startswith(abr):
                kwargs[name] = _parse_value(name, val, defaults[name])
                break
        else:
            raise ValueError(f"Unknown abbreviated key '{abr}'!")
    return kwargs


def ppid_to_config(cls, ppid, key=None):
    """Reconstruct a configuration dataclass from its identifier"""
    if key is not None and not ppid.startswith(f"{key}:"):
        raise ValueError(f"Expected a '{key}' identifier, got '{ppid}'")
    return cls(**ppid_to_kwargs(cls, ppid))
