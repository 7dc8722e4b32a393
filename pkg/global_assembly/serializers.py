from rest_framework import serializers

from .euler import FAMILIES
from .rankin import EVEN_READINGS, EXPONENT_VARIANTS, ODD_READINGS

PARITY_CHOICES = ('even', 'odd')


class FormFileSerializer(serializers.Serializer):
    """{"weight", "level", "char_disc", "coeffs"}: a(1..N) of a primitive form"""
    weight = serializers.IntegerField(min_value=1)
    level = serializers.IntegerField(min_value=1)
    char_disc = serializers.IntegerField()
    coeffs = serializers.ListField(child=serializers.IntegerField(), min_length=1)

    def validate(self, data):
        if data['level'] == 1 and data['char_disc'] != 1:
            raise serializers.ValidationError("level-1 forms carry the trivial character (char_disc 1)")
        return data


class LValueRequestSerializer(serializers.Serializer):
    i = serializers.IntegerField(min_value=1)
    parity = serializers.ChoiceField(choices=PARITY_CHOICES, required=False)
    D = serializers.IntegerField(min_value=3, required=False)
    completed = serializers.BooleanField(default=True)

    def validate(self, data):
        if data['i'] % 2 and 'D' not in data:
            raise serializers.ValidationError("L(i, chi) at odd i needs D")
        return data


class EulerRequestSerializer(serializers.Serializer):
    family = serializers.ChoiceField(choices=FAMILIES)
    s = serializers.DecimalField(max_digits=20, decimal_places=10)
    twist = serializers.IntegerField(min_value=0, default=0)
    Q = serializers.ListField(child=serializers.IntegerField(min_value=2), default=list)
    cutoff = serializers.IntegerField(min_value=2, required=False)


class LiftRequestSerializer(serializers.Serializer):
    m = serializers.IntegerField(min_value=1, max_value=3)
    D = serializers.IntegerField(min_value=3)
    T = serializers.DictField()
    route = serializers.ChoiceField(choices=('auto', 'character', 'overlattice'), default='auto')

    def validate(self, data):
        if len(data['T'].get('diag', [])) != data['m']:
            raise serializers.ValidationError(f"T must have degree m={data['m']}")
        return data


class PeriodRequestSerializer(serializers.Serializer):
    m = serializers.IntegerField(min_value=1, max_value=3)
    D = serializers.IntegerField(min_value=3)
    s = serializers.CharField(required=False)
    cutoff = serializers.IntegerField(min_value=1, required=False)
    euler_cutoff = serializers.IntegerField(min_value=2, required=False)
    prime_cutoff = serializers.IntegerField(min_value=2, default=200)
    reading = serializers.ChoiceField(choices=ODD_READINGS + EVEN_READINGS, required=False)
    exponent = serializers.ChoiceField(choices=EXPONENT_VARIANTS, default='calibrated')

    def validate_s(self, value):
        from fractions import Fraction

        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise serializers.ValidationError(f"s must be a rational number: {exc}")


class SatakeSerializer(serializers.Serializer):
    p = serializers.IntegerField()
    alpha = serializers.CharField()
    partner = serializers.CharField()
    abs_alpha = serializers.CharField()
    ramanujan = serializers.BooleanField()
