from rest_framework import serializers

FAMILY_CHOICES = ('H', 'H_parts', 'assembly', 'lambda', 'P', 'zeta', 'Z_star', 'K', 'koecher', 'Q', 'L')


class VerifyRequestSerializer(serializers.Serializer):
    """One verification job: a family at (D, p), degree m and unit class d0"""
    family = serializers.ChoiceField(choices=FAMILY_CHOICES)
    m = serializers.IntegerField(min_value=0, max_value=3)
    D = serializers.IntegerField(min_value=1)
    p = serializers.IntegerField(min_value=2)
    d0 = serializers.IntegerField(default=1)
    order = serializers.IntegerField(min_value=0, max_value=8, required=False)
    literal = serializers.BooleanField(default=False)
    allow_calibration = serializers.BooleanField(default=True)

    def validate(self, data):
        if data['m'] == 0 and data['family'] != 'Q':
            raise serializers.ValidationError("m = 0 is only meaningful for the Q round trip")
        if data['m'] == 3 and data['family'] not in ('Q', 'L', 'Z_star'):
            raise serializers.ValidationError("class sums run for m <= 2; m = 3 is closed-chain only")
        if data['d0'] % data['p'] == 0:
            raise serializers.ValidationError("d0 must be a unit at p")
        return data


class DeltaSerializer(serializers.Serializer):
    where = serializers.CharField()
    literal = serializers.CharField()
    calibrated = serializers.CharField()


class MonomialDiffSerializer(serializers.Serializer):
    monomial = serializers.CharField()
    difference = serializers.CharField()


class VerificationReportSerializer(serializers.Serializer):
    family = serializers.CharField()
    context = serializers.CharField()
    m = serializers.IntegerField()
    d0 = serializers.IntegerField()
    order = serializers.IntegerField()
    variant = serializers.CharField()
    against = serializers.CharField()
    passed = serializers.BooleanField()
    first_mismatch = serializers.IntegerField(allow_null=True)
    monomials = MonomialDiffSerializer(many=True)
    deltas = DeltaSerializer(many=True)
