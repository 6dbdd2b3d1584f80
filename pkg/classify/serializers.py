from rest_framework import serializers

from real_roots.exceptions import RealRootsError
from .models import ClassificationJob
from .utils import FAST_MODES, MODES


def _check_system(text, mode):
    from cli.utils import parse_input

    try:
        parse_input(text, mode)
    except RealRootsError as e:
        raise serializers.ValidationError({'system': str(e)})


class ClassifyRequestSerializer(serializers.Serializer):
    """Payload of a synchronous classification."""

    system = serializers.CharField(trim_whitespace=False)
    mode = serializers.ChoiceField(choices=MODES, default='hermite-full')
    seed = serializers.IntegerField(required=False, allow_null=True)
    fast_mode = serializers.ChoiceField(choices=FAST_MODES, required=False, allow_null=True)
    x_order = serializers.ListField(child=serializers.CharField(), required=False, allow_null=True)
    lam = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    prime = serializers.IntegerField(min_value=3, required=False, allow_null=True)

    def validate_system(self, value):
        if not value.strip():
            raise serializers.ValidationError("The system text is empty.")
        return value

    def options(self):
        """Keyword arguments for run_mode."""
        data = self.validated_data
        return {
            name: data.get(name)
            for name in ('seed', 'fast_mode', 'x_order', 'lam', 'prime')
            if data.get(name) is not None
        }


class ClassificationJobCreateSerializer(serializers.ModelSerializer):
    """Serializer for creating a background classification job."""

    mode = serializers.ChoiceField(choices=MODES, default='hermite-full')
    fast_mode = serializers.ChoiceField(choices=FAST_MODES, default='auto')

    class Meta:
        model = ClassificationJob
        fields = ['system', 'mode', 'seed', 'fast_mode', 'x_order']

    def validate_x_order(self, value):
        if value is not None and (
            not isinstance(value, list) or not all(isinstance(name, str) for name in value)
        ):
            raise serializers.ValidationError("x_order must be a list of variable names.")
        return value

    def validate(self, attrs):
        _check_system(attrs['system'], attrs.get('mode', 'hermite-full'))
        return attrs

    def create(self, validated_data):
        owner = self.context['request'].user
        return ClassificationJob.objects.create(owner=owner, **validated_data)


class ClassificationJobSerializer(serializers.ModelSerializer):
    """Serializer for job status and result."""

    class Meta:
        model = ClassificationJob
        fields = [
            'id', 'system', 'mode', 'seed', 'fast_mode', 'x_order',
            'status', 'result', 'error', 'exit_code', 'created_at', 'updated_at',
        ]
        read_only_fields = fields
