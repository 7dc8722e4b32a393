from fractions import Fraction

from rest_framework import serializers

from exact_algebra.quadext import as_fraction
from hermitian_periods.exceptions import InvalidInput


class RationalField(serializers.Field):
    """Rationals travel as strings ("3/4") or integers"""

    def to_representation(self, value):
        value = Fraction(value)
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

    def to_internal_value(self, data):
        try:
            return as_fraction(data)
        except InvalidInput as exc:
            raise serializers.ValidationError(str(exc))


class HermitianMatrixSerializer(serializers.Serializer):
    """
    {"m": 2, "diag": [...], "off": [[a, b], ...], "D": 4, "p": 2}; an
    off-diagonal pair [a, b] stands for (a + b w) / sqrt(-D).
    """
    m = serializers.IntegerField(min_value=1, max_value=6)
    diag = serializers.ListField(child=RationalField())
    off = serializers.ListField(child=serializers.ListField(child=RationalField(), min_length=2, max_length=2), required=False, default=list)
    D = serializers.IntegerField(min_value=3)
    p = serializers.IntegerField(min_value=2, required=False)
    level = serializers.IntegerField(min_value=0, required=False)

    def validate_D(self, value):
        from quadratic_symbols.fields import is_fundamental
        if not is_fundamental(value):
            raise serializers.ValidationError(f"-{value} is not a fundamental discriminant")
        return value

    def validate(self, data):
        m = data['m']
        if len(data['diag']) != m:
            raise serializers.ValidationError(f"diag needs {m} entries, got {len(data['diag'])}")
        if len(data['off']) != m * (m - 1) // 2:
            raise serializers.ValidationError(f"off needs {m * (m - 1) // 2} pairs, got {len(data['off'])}")
        return data

    def to_global(self):
        from quadratic_symbols.fields import make_field

        from .matrices import GlobalHermitian

        data = self.validated_data
        field = make_field(data['D'])
        for d in data['diag']:
            if d.denominator != 1:
                raise InvalidInput(f"global diagonal entries are integers, got {d}")
        return GlobalHermitian(field, [int(d) for d in data['diag']], [tuple(pair) for pair in data['off']])

    def to_local(self, ctx=None):
        from quadratic_symbols.local import splitting_type

        from .matrices import LocalHermitian

        data = self.validated_data
        if ctx is None:
            if 'p' not in data:
                raise InvalidInput("a local matrix needs p")
            ctx = splitting_type(data['D'], data['p'])
        return LocalHermitian.from_dict(ctx, data)


class ClassRepresentativeSerializer(serializers.Serializer):
    matrix = serializers.DictField()
    ord_det = serializers.IntegerField()
    unit_class = serializers.IntegerField()


class MassReportSerializer(serializers.Serializer):
    """Both sides of the mass formula"""
    matrix = serializers.DictField()
    classes = serializers.ListField(child=serializers.DictField())
    class_side = RationalField()
    density_side = serializers.DictField()
    agree = serializers.BooleanField()
