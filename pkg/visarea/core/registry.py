#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Registry maps names to engines and corpus families.

Import the global registry object using

.. code:: py

    from visarea.core.registry import registry

-   Register an engine: ``@registry.register_engine``
-   Register a corpus family generator: ``@registry.register_corpus_family``
"""

import collections
from typing import Any, Callable, DefaultDict, Optional, Type

from visarea.core.engine import Engine
from visarea.core.utils import Singleton


class Registry(metaclass=Singleton):
    mapping: DefaultDict[str, Any] = collections.defaultdict(dict)

    @classmethod
    def _register_impl(
        cls,
        _type: str,
        to_register: Optional[Any],
        name: Optional[str],
        assert_type: Optional[Type] = None,
    ) -> Callable:
        def wrap(to_register):
            if assert_type is not None:
                assert issubclass(
                    to_register, assert_type
                ), "{} must be a subclass of {}".format(
                    to_register, assert_type
                )
            register_name = to_register.__name__ if name is None else name

            cls.mapping[_type][register_name] = to_register
            return to_register

        if to_register is None:
            return wrap
        else:
            return wrap(to_register)

    @classmethod
    def register_engine(cls, to_register=None, *, name: Optional[str] = None):
        r"""Register an engine to registry with key :p:`name`

        :param name: Key with which the engine will be registered.
            If :py:`None` will use the name of the class

        .. code:: py

            from visarea.core.engine import Engine
            from visarea.core.registry import registry

            @registry.register_engine(name="mine")
            class MyEngine(Engine):
                def run(self, polygon, sink, meter=None):
                    ...
        """
        return cls._register_impl(
            "engine", to_register, name, assert_type=Engine
        )

    @classmethod
    def register_corpus_family(
        cls, to_register=None, *, name: Optional[str] = None
    ):
        r"""Register a polygon family generator with key :p:`name`.

        A generator is called as ``generator(config, seed)`` with the
        ``GENERATOR`` config node and returns a
        :ref:`visarea.oracle.corpus.CorpusInstance`.
        """
        return cls._register_impl("corpus_family", to_register, name)

    @classmethod
    def _get_impl(cls, _type: str, name: str) -> Any:
        return cls.mapping[_type].get(name, None)

    @classmethod
    def get_engine(cls, name: str) -> Optional[Type[Engine]]:
        return cls._get_impl("engine", name)

    @classmethod
    def get_corpus_family(cls, name: str) -> Optional[Callable]:
        return cls._get_impl("corpus_family", name)

    @classmethod
    def list_corpus_families(cls):
        return sorted(cls.mapping["corpus_family"])


registry = Registry()
