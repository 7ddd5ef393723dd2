class EnumController:
    """Helpers for the plain-class enumerations used across the package.

    An enumeration is a class whose public attributes are its values,
    e.g. ``ProblemKind.NFB``.
    """

    @staticmethod
    def names(enum, beautify=False):
        attrs = [attr for attr in enum.__dict__
                 if attr[:1] != "_" and not callable(getattr(enum, attr))]

        if beautify:
            return [attr.replace("_", " ") for attr in attrs]

        return attrs


    @staticmethod
    def values(enum):
        return [getattr(enum, attr) for attr in EnumController.names(enum)]


    @staticmethod
    def value(enum, index):
        return EnumController.values(enum)[index]


    @staticmethod
    def contains(enum, value):
        return value in EnumController.values(enum)


    @staticmethod
    def parse(enum, text):
        """Resolve ``text`` to an enumeration value.

        Accepts either the value itself or the attribute name, case
        insensitively.

        Raises
        ------
        ValueError
            If ``text`` matches neither a value nor a name.
        """
        for name in EnumController.names(enum):
            value = getattr(enum, name)

            if text == value:
                return value

            if isinstance(text, str) and text.lower() in (name.lower(), str(value).lower()):
                return value

        raise ValueError(f"'{text}' is not one of {EnumController.values(enum)}")
